#pragma once

// Command-line front end:
//
//   zeck decompose <n>
//   zeck solve   --n N [--players P] [--alliances "1,2;3"] [--coalition team1|1,3]... [--json]
//   zeck verify  [--claim ID] [grid overrides] [--jobs J] [--json]
//   zeck reach   --n N [--json]
//   zeck play    --n N [--players P] [--alliances ...] [--human 1,3]
//   zeck serve   [--port 8787] [--host H] [--persist FILE] [--static DIR]
//
// Exit codes: 0 success (verify: every point passed), 1 runtime failure,
// 2 usage error.

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zeck/fibzeck.hpp"
#include "zeck/json_io.hpp"
#include "zeck/reach.hpp"
#include "zeck/server.hpp"
#include "zeck/session.hpp"
#include "zeck/solver.hpp"
#include "zeck/theorems.hpp"

namespace zeck::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

// "{1^3 + 2 + 5^2}"
inline std::string format_state(const GameState& s) {
  std::string out = "{";
  bool first = true;
  for (int i = 1; i <= static_cast<int>(s.counts().size()); ++i) {
    const Count c = s.count(i);
    if (c == 0) continue;
    if (!first) out += " + ";
    first = false;
    out += std::to_string(fib_value(i));
    if (c > 1) out += "^" + std::to_string(c);
  }
  return out + "}";
}

inline std::string format_decomposition(Value n) {
  const auto d = zeckendorf(n);
  std::string names, values;
  for (auto it = d.indices.rbegin(); it != d.indices.rend(); ++it) {
    if (!names.empty()) {
      names += " + ";
      values += " + ";
    }
    names += "F_" + std::to_string(*it);
    values += std::to_string(fib_value(*it));
  }
  return std::to_string(n) + " = " + names + " = " + values;
}

struct SeatingArgs {
  int players = 0;
  std::string alliances;

  // Singletons when no alliances are given; two players when nothing is.
  SeatingConfig build() const {
    if (!alliances.empty()) return SeatingConfig::parse(alliances, players);
    return SeatingConfig::singletons(players > 0 ? players : 2);
  }
};

inline void add_seating_options(CLI::App* cmd, SeatingArgs& args) {
  cmd->add_option("--players,-p", args.players, "Number of players")->check(CLI::Range(1, 1000));
  cmd->add_option("--alliances,-a", args.alliances,
                  "Teams as comma-separated players, teams separated by ';' (e.g. \"1,2,3,4;5,6\")");
}

inline int cmd_decompose(const std::string& arg, bool json, std::ostream& out, std::ostream& err) {
  Value n = 0;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(arg, &used);
    if (used != arg.size() || v < 1 || static_cast<Value>(v) > kMaxN) throw std::out_of_range("n");
    n = static_cast<Value>(v);
  } catch (const std::exception&) {
    err << "usage: zeck decompose <n>   with 1 <= n <= " << kMaxN << '\n';
    return kUsage;
  }
  if (json) {
    const auto d = zeckendorf(n);
    std::vector<Value> values;
    for (int i : d.indices) values.push_back(fib_value(i));
    out << Json{{"n", n}, {"indices", d.indices}, {"values", values}}.dump() << '\n';
  } else {
    out << format_decomposition(n) << '\n';
  }
  return kOk;
}

inline int cmd_solve(Value n, const SeatingArgs& sa, const std::vector<std::string>& coalitions,
                     bool json, bool with_policy, std::ostream& out, std::ostream& err) {
  SeatingConfig seating = SeatingConfig::singletons(1);
  try {
    seating = sa.build();
  } catch (const InvalidArgument& e) {
    err << "invalid seating: " << e.what() << '\n';
    return kUsage;
  }
  std::vector<Coalition> targets;
  try {
    for (const auto& text : coalitions) targets.push_back(seating.parse_coalition(text));
  } catch (const InvalidArgument& e) {
    err << "invalid --coalition: " << e.what() << '\n';
    return kUsage;
  }
  if (targets.empty())
    for (int t = 1; t <= seating.team_count(); ++t) targets.push_back(seating.team(t));

  Json results = Json::array();
  for (const auto& target : targets) {
    const SolveOutcome o = solve(n, seating, target);
    if (json) {
      results.push_back(outcome_to_json(n, seating, target, o, with_policy));
    } else {
      out << "coalition " << target.to_string() << ": " << (o.win ? "WIN" : "LOSS") << '\n';
      out << "  states visited " << o.stats.states_visited << ", memo entries "
          << o.stats.memo_entries << ", max depth " << o.stats.max_depth << '\n';
    }
  }
  if (json) out << results.dump(2) << '\n';
  return kOk;
}

struct VerifyArgs {
  std::string claim;
  std::optional<Value> n_min, n_max, assert_from;
  std::vector<int> players;
  std::optional<int> t, b, d;
  std::string alliance;
  bool no_rotations = false;
  unsigned jobs = 0;
  bool json = false;
  bool timing = false;
};

inline int cmd_verify(const VerifyArgs& va, std::ostream& out, std::ostream& err) {
  std::vector<ClaimSpec> claims;
  try {
    if (va.claim.empty()) {
      claims = claim_catalog();
    } else {
      claims.push_back(default_claim(parse_claim_id(va.claim)));
    }
    for (auto& c : claims) {
      if (va.n_min) c.n_min = *va.n_min;
      if (va.n_max) c.n_max = *va.n_max;
      if (!va.players.empty()) c.players = va.players;
      if (va.t) c.t = *va.t;
      if (va.b) c.b = *va.b;
      if (va.d) c.d = *va.d;
      if (!va.alliance.empty()) c.alliance = SeatingConfig::parse(va.alliance).team(1).members();
      if (va.no_rotations) c.all_rotations = false;
      if (va.t || va.b || va.d || !va.players.empty()) {
        if (c.id == ClaimId::TeamsK) c.players = {c.t * (c.t - 1)};
        if (c.id == ClaimId::Big2dVsD) c.players = {3 * c.d};
        refresh_bounds(c);
      }
      if (va.assert_from) c.assert_from = *va.assert_from;
      expand_grid(c);  // reject a bad range before any solving
    }
  } catch (const InvalidArgument& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  const unsigned jobs = va.jobs > 0 ? va.jobs : default_jobs();
  bool all_pass = true;
  Json reports = Json::array();
  for (const auto& c : claims) {
    const auto report = verify(c, jobs);
    all_pass = all_pass && report.all_pass();
    if (va.json) {
      reports.push_back(report_to_json(report));
    } else {
      out << render_text(report, va.timing) << '\n';
    }
  }
  if (va.json) {
    out << Json{{"reports", std::move(reports)}, {"all_pass", all_pass}}.dump(2) << '\n';
  } else {
    out << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  }
  return all_pass ? kOk : kFailure;
}

inline int cmd_reach(Value n, bool json, std::ostream& out) {
  const auto r = reachability(n);
  if (json) {
    out << reach_to_json(r).dump(2) << '\n';
    return kOk;
  }
  out << "states: " << r.state_count << ", terminal: " << r.terminal_states.size()
      << ", acyclic: " << (r.acyclic ? "yes" : "no") << '\n';
  for (const auto& t : r.terminal_states) out << "terminal state: " << format_state(t) << '\n';
  if (r.longest_path)
    out << "longest game: " << *r.longest_path << " moves, shortest game: " << *r.shortest_path
        << " moves\n";
  return kOk;
}

// Terminal play loop. Machine players follow best_move for their own team.
inline int cmd_play(Value n, const SeatingArgs& sa, const std::string& human_text, std::istream& in,
                    std::ostream& out, std::ostream& err) {
  SeatingConfig seating = SeatingConfig::singletons(1);
  Coalition humans;
  try {
    seating = sa.build();
    if (!human_text.empty()) humans = seating.parse_coalition(human_text);
  } catch (const InvalidArgument& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  Session game(n, seating);
  std::map<int, std::unique_ptr<CoalitionSolver>> solvers;
  auto solver_for = [&](int team) -> CoalitionSolver& {
    auto& slot = solvers[team];
    if (!slot) slot = std::make_unique<CoalitionSolver>(seating, seating.team(team));
    return *slot;
  };

  out << "n = " << n << ", players = " << seating.players() << ", teams = " << seating.to_string()
      << '\n';
  while (!game.finished()) {
    const int player = game.to_move();
    const int team = game.team_to_move();
    out << "turn " << game.turn() + 1 << ": " << format_state(game.state()) << "  player "
        << player << " (team " << team << ") to move\n";
    const auto moves = legal_moves(game.state());
    if (!humans.contains(player)) {
      const auto bm = solver_for(team).best_move(game.state(), game.turn());
      out << "player " << player << " plays " << to_token(bm.move) << " (" << describe(bm.move)
          << ")" << (bm.win ? "  [team " + std::to_string(team) + " is winning]" : "") << '\n';
      game.play(bm.move);
      continue;
    }
    out << "legal:";
    for (const auto& m : moves) out << ' ' << to_token(m) << " (" << describe(m) << ")";
    out << "\n> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      err << "input ended before the game finished\n";
      return kFailure;
    }
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line == "quit") {
      out << "game abandoned\n";
      return kOk;
    }
    if (line == "hint") {
      const auto bm = solver_for(team).best_move(game.state(), game.turn());
      out << "team " << team << (bm.win ? " can force a win" : " cannot force a win")
          << "; suggested " << to_token(bm.move) << " (" << describe(bm.move) << ")\n";
      continue;
    }
    try {
      game.play(parse_move(line));
    } catch (const InvalidArgument& e) {
      out << "? " << e.what() << " (moves: c1, adj:i, s2, split:i; or hint, quit)\n";
    } catch (const IllegalMove& e) {
      out << "illegal: " << e.what() << '\n';
    }
  }
  out << "final: " << format_state(game.state()) << '\n';
  if (auto w = game.winner()) {
    out << "player " << *w << " (team " << *game.winning_team() << ") made the last move and wins\n";
  } else {
    out << "no moves were possible; nobody wins\n";
  }
  return kOk;
}

struct ServeArgs {
  int port = server::kDefaultPort;
  std::string host = "127.0.0.1";
  std::string persist;
  std::string static_dir;
  std::string cors_origin = "*";
};

inline int cmd_serve(const ServeArgs& sa, std::ostream& out, std::ostream& err) {
  server::Api::Options opts;
  opts.state_cap = default_state_cap();
  opts.persist_path = sa.persist;
  server::Api api(opts);
  const std::size_t restored = api.load(err);
  httplib::Server svr;
  server::mount(svr, api, sa.cors_origin);
  if (!sa.static_dir.empty() && !svr.set_mount_point("/", sa.static_dir)) {
    err << "static directory not found: " << sa.static_dir << '\n';
    return kUsage;
  }
  if (!svr.bind_to_port(sa.host, sa.port)) {
    err << "cannot listen on " << sa.host << ":" << sa.port << " (port in use?)\n";
    return kFailure;
  }
  out << "listening on http://" << sa.host << ":" << sa.port;
  if (restored) out << " (" << restored << " sessions restored)";
  out << std::endl;
  return svr.listen_after_bind() ? kOk : kFailure;
}

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Zeckendorf game engine and coalition solver", "zeck"};
  app.require_subcommand(1);
  bool json = false;

  std::string decompose_n;
  auto* decompose = app.add_subcommand("decompose", "Print the Zeckendorf decomposition of n");
  decompose->add_option("n", decompose_n, "Positive integer")->required();
  decompose->add_flag("--json", json, "JSON output");

  Value solve_n = 0;
  SeatingArgs solve_seating;
  std::vector<std::string> coalitions;
  bool with_policy = false;
  auto* solve_cmd = app.add_subcommand("solve", "Decide whether coalitions can force the last move");
  solve_cmd->add_option("--n,-n", solve_n, "Number of starting 1's")->required()->check(CLI::Range(Value{1}, kMaxN));
  add_seating_options(solve_cmd, solve_seating);
  solve_cmd->add_option("--coalition,-c", coalitions, "teamK or comma-separated players; repeatable");
  solve_cmd->add_flag("--json", json, "JSON output");
  solve_cmd->add_flag("--policy", with_policy, "Include the winning policy in JSON output");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check the winning-strategy claims by exhaustive solving");
  verify_cmd->add_option("--claim", va.claim, "Claim id; all claims when omitted");
  verify_cmd->add_option("--n-min", va.n_min, "Smallest n in the grid");
  verify_cmd->add_option("--n-max", va.n_max, "Largest n in the grid");
  verify_cmd->add_option("--players", va.players, "Player counts to sweep")->delimiter(',');
  verify_cmd->add_option("--t", va.t, "TEAMS_K: number of teams");
  verify_cmd->add_option("--b", va.b, "OFFSET_*: offset b");
  verify_cmd->add_option("--d", va.d, "BIG_2D_VS_D: small alliance size d");
  verify_cmd->add_option("--alliance", va.alliance, "OFFSET_*: alliance players, e.g. 1,2,3");
  verify_cmd->add_option("--assert-from", va.assert_from, "Assert the claim from this n on");
  verify_cmd->add_flag("--no-rotations", va.no_rotations, "Only the unrotated seating");
  verify_cmd->add_option("--jobs,-j", va.jobs, "Worker threads (default: all cores)");
  verify_cmd->add_flag("--json", va.json, "JSON output");
  verify_cmd->add_flag("--timing", va.timing, "Show elapsed time in text output");

  Value reach_n = 0;
  auto* reach_cmd = app.add_subcommand("reach", "Enumerate every position reachable from {1^n}");
  reach_cmd->add_option("--n,-n", reach_n, "Number of starting 1's")->required()->check(CLI::Range(Value{1}, kMaxN));
  reach_cmd->add_flag("--json", json, "JSON output");

  Value play_n = 0;
  SeatingArgs play_seating;
  std::string human_text;
  auto* play_cmd = app.add_subcommand("play", "Play in the terminal against solver-driven players");
  play_cmd->add_option("--n,-n", play_n, "Number of starting 1's")->required()->check(CLI::Range(Value{1}, kMaxN));
  add_seating_options(play_cmd, play_seating);
  play_cmd->add_option("--human", human_text, "Players you control, e.g. 1 or 1,3");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  serve_cmd->add_option("--port", serve_args.port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", serve_args.host, "Bind address");
  serve_cmd->add_option("--persist", serve_args.persist, "JSON-lines session snapshot file");
  serve_cmd->add_option("--static", serve_args.static_dir, "Directory of web client assets");
  serve_cmd->add_option("--cors-origin", serve_args.cors_origin, "Allowed CORS origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) return cmd_decompose(decompose_n, json, out, err);
    if (*solve_cmd) return cmd_solve(solve_n, solve_seating, coalitions, json, with_policy, out, err);
    if (*verify_cmd) return cmd_verify(va, out, err);
    if (*reach_cmd) return cmd_reach(reach_n, json, out);
    if (*play_cmd) return cmd_play(play_n, play_seating, human_text, in, out, err);
    if (*serve_cmd) return cmd_serve(serve_args, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  std::vector<const char*> argv{"zeck"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace zeck::cli
