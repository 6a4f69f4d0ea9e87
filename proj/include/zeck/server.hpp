#pragma once

// HTTP JSON API for interactive play.
//
//   POST /games                    {n, players?, alliances?, human_players?} -> 201 game
//   GET  /games/{id}               game
//   GET  /games/{id}/legal         ["c1", ...] in canonical order
//   POST /games/{id}/moves         {move, turn?} -> game
//   POST /games/{id}/advance       machine players move until a human is up -> game
//   GET  /games/{id}/analysis      ?coalition=team2|1,3 -> {win, best_move, ...}
//
// Errors are {"error": message, "field"?: name}: 400 bad body, 404 unknown
// id, 409 illegal move / game over / stale turn, 422 bad move token,
// 503 solver cap exceeded.
//
// Api does the work and is transport independent; mount() binds it to a
// cpp-httplib server.

#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "zeck/json_io.hpp"
#include "zeck/session.hpp"
#include "zeck/solver.hpp"

namespace zeck::server {

inline constexpr int kDefaultPort = 8787;

struct Response {
  int status = 200;
  Json body;
};

inline Response error(int status, const std::string& message, const std::string& field = {}) {
  Json body{{"error", message}};
  if (!field.empty()) body["field"] = field;
  return {status, std::move(body)};
}

inline std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SessionRecord {
  SessionRecord(std::string id_, Session s, std::vector<int> humans)
      : id(std::move(id_)), session(std::move(s)), human_players(std::move(humans)) {}

  std::string id;
  Session session;
  std::vector<int> human_players;
  std::string created_at;
  std::string updated_at;
  std::mutex mu;  // serializes writes to this session

  bool is_human(int player) const {
    return std::find(human_players.begin(), human_players.end(), player) != human_players.end();
  }
};

// Game view plus record metadata. Caller holds rec.mu.
inline Json record_to_json(const SessionRecord& rec) {
  Json j = session_to_json(rec.session);
  j["id"] = rec.id;
  j["human_players"] = rec.human_players;
  j["created_at"] = rec.created_at;
  j["updated_at"] = rec.updated_at;
  return j;
}

// Snapshot line for the persistence file. Caller holds rec.mu.
inline Json record_snapshot(const SessionRecord& rec) {
  return Json{{"id", rec.id},
              {"n", rec.session.state().n()},
              {"players", rec.session.seating().players()},
              {"alliances", seating_to_json(rec.session.seating())},
              {"human_players", rec.human_players},
              {"moves", moves_to_json(rec.session.moves())},
              {"created_at", rec.created_at},
              {"updated_at", rec.updated_at}};
}

// One solver per (n, seating, coalition), shared by all requests.
class AnalysisCache {
public:
  explicit AnalysisCache(std::size_t cap) : cap_(cap) {}

  BestMove best_move(const GameState& s, std::uint64_t turn, const SeatingConfig& seating,
                     const Coalition& target) {
    Entry& e = entry(s.n(), seating, target);
    std::lock_guard lock(e.mu);
    return e.solver.best_move(s, turn);
  }

private:
  struct Entry {
    Entry(const SeatingConfig& seating, const Coalition& target, std::size_t cap)
        : solver(seating, target, cap) {}
    std::mutex mu;
    CoalitionSolver solver;
  };

  Entry& entry(Value n, const SeatingConfig& seating, const Coalition& target) {
    const std::string key =
        std::to_string(n) + "|" + seating.to_string() + "|" + target.to_string();
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end())
      it = entries_.emplace(key, std::make_unique<Entry>(seating, target, cap_)).first;
    return *it->second;
  }

  std::size_t cap_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

class Api {
public:
  struct Options {
    std::size_t state_cap = kDefaultStateCap;
    std::string persist_path;  // empty: in-memory only
  };

  Api() : Api(Options{}) {}
  explicit Api(Options opts)
      : opts_(std::move(opts)), analysis_(opts_.state_cap), rng_(std::random_device{}()) {}

  // Replays a JSON-lines snapshot file; the last line for each id wins.
  // Returns the number of sessions restored. Bad lines are reported and skipped.
  std::size_t load(std::ostream& log) {
    if (opts_.persist_path.empty()) return 0;
    std::ifstream in(opts_.persist_path);
    if (!in) return 0;
    std::map<std::string, Json> latest;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      if (line.empty()) continue;
      try {
        Json j = Json::parse(line);
        const auto id = j.at("id").get<std::string>();
        latest[id] = std::move(j);
      } catch (const std::exception& e) {
        log << "persist: skipping line " << lineno << ": " << e.what() << '\n';
      }
    }
    std::size_t restored = 0;
    for (auto& [id, j] : latest) {
      try {
        std::vector<Move> moves;
        for (const auto& t : j.at("moves")) moves.push_back(parse_move(t.get<std::string>()));
        auto seating = SeatingConfig::from_teams(j.at("players").get<int>(),
                                                 j.at("alliances").get<std::vector<std::vector<int>>>());
        auto rec = std::make_shared<SessionRecord>(
            id, Session::replay(j.at("n").get<Value>(), std::move(seating), moves),
            j.at("human_players").get<std::vector<int>>());
        rec->created_at = j.value("created_at", utc_now());
        rec->updated_at = j.value("updated_at", rec->created_at);
        std::unique_lock lock(store_mu_);
        sessions_[id] = std::move(rec);
        ++restored;
      } catch (const std::exception& e) {
        log << "persist: cannot restore session " << id << ": " << e.what() << '\n';
      }
    }
    return restored;
  }

  Response create_game(const std::string& body) {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::parse_error&) {
      return error(400, "body is not valid JSON");
    }
    if (!j.is_object()) return error(400, "body must be a JSON object");

    if (!j.contains("n") || !j["n"].is_number_integer())
      return error(400, "n must be an integer", "n");
    const auto n = j["n"].get<long long>();
    if (n < 1 || static_cast<Value>(n) > kMaxN)
      return error(400, "n must be in 1.." + std::to_string(kMaxN), "n");

    int players = 0;
    if (j.contains("players") && !j["players"].is_null()) {
      if (!j["players"].is_number_integer() || j["players"].get<long long>() < 1 ||
          j["players"].get<long long>() > 1000)
        return error(400, "players must be an integer in 1..1000", "players");
      players = j["players"].get<int>();
    }

    std::optional<SeatingConfig> seating;
    try {
      if (j.contains("alliances") && !j["alliances"].is_null()) {
        const auto& a = j["alliances"];
        if (!a.is_array()) return error(400, "alliances must be an array of player arrays", "alliances");
        std::vector<std::vector<int>> teams;
        int max_player = 0;
        for (const auto& team : a) {
          if (!team.is_array())
            return error(400, "alliances must be an array of player arrays", "alliances");
          std::vector<int> members;
          for (const auto& q : team) {
            if (!q.is_number_integer())
              return error(400, "alliance members must be player numbers", "alliances");
            members.push_back(q.get<int>());
            max_player = std::max(max_player, members.back());
          }
          teams.push_back(std::move(members));
        }
        seating = SeatingConfig::from_teams(players > 0 ? players : max_player, teams);
      } else if (players > 0) {
        seating = SeatingConfig::singletons(players);
      } else {
        return error(400, "give players, alliances, or both", "players");
      }
    } catch (const InvalidArgument& e) {
      return error(400, e.what(), "alliances");
    }

    std::vector<int> humans;
    if (j.contains("human_players") && !j["human_players"].is_null()) {
      if (!j["human_players"].is_array())
        return error(400, "human_players must be an array", "human_players");
      for (const auto& q : j["human_players"]) {
        if (!q.is_number_integer() || q.get<int>() < 1 || q.get<int>() > seating->players())
          return error(400, "human_players entries must be players 1.." +
                                std::to_string(seating->players()),
                       "human_players");
        humans.push_back(q.get<int>());
      }
    }

    std::shared_ptr<SessionRecord> rec;
    {
      std::unique_lock lock(store_mu_);
      std::string id;
      do {
        std::ostringstream os;
        os << std::hex << rng_();
        id = os.str();
      } while (sessions_.count(id));
      rec = std::make_shared<SessionRecord>(id, Session(static_cast<Value>(n), *seating), humans);
      rec->created_at = rec->updated_at = utc_now();
      sessions_[id] = rec;
    }
    std::lock_guard lock(rec->mu);
    persist(*rec);
    return {201, record_to_json(*rec)};
  }

  Response get_game(const std::string& id) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    std::lock_guard lock(rec->mu);
    return {200, record_to_json(*rec)};
  }

  Response legal(const std::string& id) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    std::lock_guard lock(rec->mu);
    return {200, moves_to_json(legal_moves(rec->session.state()))};
  }

  Response post_move(const std::string& id, const std::string& body) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::parse_error&) {
      return error(400, "body is not valid JSON");
    }
    if (!j.is_object() || !j.contains("move") || !j["move"].is_string())
      return error(400, "body must be {\"move\": token}", "move");
    Move move;
    try {
      move = parse_move(j["move"].get<std::string>());
    } catch (const InvalidArgument& e) {
      return error(422, e.what(), "move");
    }
    std::lock_guard lock(rec->mu);
    if (j.contains("turn") && !j["turn"].is_null()) {
      if (!j["turn"].is_number_unsigned()) return error(400, "turn must be a non-negative integer", "turn");
      if (j["turn"].get<std::uint64_t>() != rec->session.turn())
        return error(409, "stale turn: game is at turn " + std::to_string(rec->session.turn()), "turn");
    }
    try {
      rec->session.play(move);
    } catch (const GameOver& e) {
      return error(409, e.what());
    } catch (const IllegalMove& e) {
      return error(409, e.what(), "move");
    }
    rec->updated_at = utc_now();
    persist(*rec);
    return {200, record_to_json(*rec)};
  }

  // Plays best_move for each machine player's own team until a human is to
  // move or the game ends.
  Response advance(const std::string& id) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    std::lock_guard lock(rec->mu);
    Session& s = rec->session;
    try {
      bool moved = false;
      while (!s.finished() && !rec->is_human(s.to_move())) {
        const auto team = s.seating().team(s.team_to_move());
        s.play(analysis_.best_move(s.state(), s.turn(), s.seating(), team).move);
        moved = true;
      }
      if (moved) {
        rec->updated_at = utc_now();
        persist(*rec);
      }
    } catch (const CapacityError& e) {
      return error(503, e.what());
    }
    return {200, record_to_json(*rec)};
  }

  Response analysis(const std::string& id, const std::string& coalition_text) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    GameState state = GameState::initial(1);
    std::uint64_t turn = 0;
    SeatingConfig seating = SeatingConfig::singletons(1);
    {
      std::lock_guard lock(rec->mu);
      if (rec->session.finished()) return error(409, "game is over; nothing to analyse");
      state = rec->session.state();
      turn = rec->session.turn();
      seating = rec->session.seating();
    }
    Coalition target;
    try {
      target = coalition_text.empty() ? seating.team(seating.team_of(seating.player_to_move(turn)))
                                      : seating.parse_coalition(coalition_text);
    } catch (const InvalidArgument& e) {
      return error(400, e.what(), "coalition");
    }
    try {
      const auto bm = analysis_.best_move(state, turn, seating, target);
      const int mover = seating.player_to_move(turn);
      return {200, Json{{"coalition", target.members()},
                        {"state", state_to_json(state)},
                        {"turn", turn},
                        {"to_move", Json{{"player", mover}, {"team", seating.team_of(mover)}}},
                        {"win", bm.win},
                        {"best_move", to_token(bm.move)},
                        {"best_move_text", describe(bm.move)}}};
    } catch (const CapacityError& e) {
      return error(503, e.what());
    }
  }

  // Dispatch on method and path; query holds decoded URL parameters.
  Response handle(const std::string& method, const std::string& path,
                  const std::map<std::string, std::string>& query, const std::string& body) {
    std::vector<std::string> parts;
    std::istringstream is(path);
    for (std::string seg; std::getline(is, seg, '/');)
      if (!seg.empty()) parts.push_back(seg);
    if (parts.empty() || parts[0] != "games") return error(404, "no such endpoint");
    if (parts.size() == 1) {
      if (method == "POST") return create_game(body);
      return error(405, "use POST /games");
    }
    const std::string& id = parts[1];
    if (parts.size() == 2 && method == "GET") return get_game(id);
    if (parts.size() == 3) {
      if (parts[2] == "legal" && method == "GET") return legal(id);
      if (parts[2] == "moves" && method == "POST") return post_move(id, body);
      if (parts[2] == "advance" && method == "POST") return advance(id);
      if (parts[2] == "analysis" && method == "GET") {
        auto it = query.find("coalition");
        return analysis(id, it == query.end() ? std::string{} : it->second);
      }
    }
    return error(404, "no such endpoint");
  }

  std::size_t session_count() const {
    std::shared_lock lock(store_mu_);
    return sessions_.size();
  }

private:
  std::shared_ptr<SessionRecord> find(const std::string& id) const {
    std::shared_lock lock(store_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static Response not_found(const std::string& id) { return error(404, "unknown game id '" + id + "'"); }

  // Caller holds rec.mu.
  void persist(const SessionRecord& rec) {
    if (opts_.persist_path.empty()) return;
    const std::string line = record_snapshot(rec).dump() + "\n";
    std::lock_guard lock(persist_mu_);
    std::ofstream out(opts_.persist_path, std::ios::app);
    out << line;
  }

  Options opts_;
  AnalysisCache analysis_;
  mutable std::shared_mutex store_mu_;
  std::map<std::string, std::shared_ptr<SessionRecord>> sessions_;
  std::mt19937_64 rng_;
  std::mutex persist_mu_;
};

// Routes /games... to the Api with CORS headers on every response.
inline void mount(httplib::Server& svr, Api& api, const std::string& cors_origin = "*") {
  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // share a port that is already in use.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  auto cors = [cors_origin](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto forward = [&api, cors](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query[k] = v;
    Response r;
    try {
      r = api.handle(req.method, req.path, query, req.body);
    } catch (const std::exception& e) {
      r = error(500, e.what());
    }
    cors(res);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const char* pattern = R"(/games(/.*)?)";
  svr.Get(pattern, forward);
  svr.Post(pattern, forward);
  svr.Options(pattern, [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
}

}  // namespace zeck::server
