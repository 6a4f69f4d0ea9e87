#pragma once

// JSON forms shared by the CLI and the HTTP API.
//
//   state   {"n": 5, "counts": [1, 0, 1]}   counts[k] = multiplicity of F_{k+1},
//                                           trailing zeros trimmed
//   move    "c1" | "adj:i" | "s2" | "split:i"

#include <string>

#include "json.hpp"
#include "zeck/engine.hpp"
#include "zeck/reach.hpp"
#include "zeck/seating.hpp"
#include "zeck/session.hpp"
#include "zeck/solver.hpp"
#include "zeck/theorems.hpp"

namespace zeck {

using Json = nlohmann::json;

inline Json state_to_json(const GameState& s) {
  return Json{{"n", s.n()}, {"counts", s.trimmed_counts()}};
}

inline GameState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("counts") || !j["counts"].is_array())
    throw InvalidArgument("state must be an object with a 'counts' array");
  std::vector<Count> counts;
  for (const auto& v : j["counts"]) {
    if (!v.is_number_unsigned()) throw InvalidArgument("state counts must be non-negative integers");
    counts.push_back(v.get<Count>());
  }
  GameState s = GameState::from_counts(counts);
  if (j.contains("n") && j["n"].get<Value>() != s.n())
    throw InvalidArgument("state 'n' does not match the sum of its parts");
  return s;
}

inline Json moves_to_json(const std::vector<Move>& moves) {
  Json arr = Json::array();
  for (const auto& m : moves) arr.push_back(to_token(m));
  return arr;
}

inline Json seating_to_json(const SeatingConfig& s) { return s.teams(); }

inline Json session_to_json(const Session& s) {
  Json j{{"state", state_to_json(s.state())},
         {"players", s.seating().players()},
         {"alliances", seating_to_json(s.seating())},
         {"turn", s.turn()},
         {"moves", moves_to_json(s.moves())},
         {"finished", s.finished()}};
  if (s.finished()) {
    j["to_move"] = nullptr;
  } else {
    j["to_move"] = Json{{"player", s.to_move()}, {"team", s.team_to_move()}};
  }
  if (auto w = s.winner()) {
    j["winner"] = Json{{"player", *w}, {"team", *s.winning_team()}};
  } else {
    j["winner"] = nullptr;
  }
  return j;
}

inline Json stats_to_json(const SolveStats& st) {
  return Json{{"states_visited", st.states_visited},
              {"memo_entries", st.memo_entries},
              {"max_depth", st.max_depth}};
}

inline Json outcome_to_json(Value n, const SeatingConfig& seating, const Coalition& target,
                            const SolveOutcome& o, bool with_policy = false) {
  Json j{{"n", n},
         {"players", seating.players()},
         {"alliances", seating_to_json(seating)},
         {"coalition", target.members()},
         {"win", o.win},
         {"stats", stats_to_json(o.stats)}};
  if (with_policy) {
    Json pol = Json::array();
    for (const auto& [key, move] : o.policy)
      pol.push_back(Json{{"counts", key.counts}, {"turn_mod", key.turn_mod}, {"move", to_token(move)}});
    j["policy"] = std::move(pol);
  }
  return j;
}

inline Json reach_to_json(const ReachReport& r) {
  Json terminals = Json::array();
  for (const auto& t : r.terminal_states) terminals.push_back(state_to_json(t));
  Json j{{"n", r.n},
         {"state_count", r.state_count},
         {"edge_count", r.edge_count},
         {"terminal_states", std::move(terminals)},
         {"acyclic", r.acyclic}};
  j["longest_path"] = r.longest_path ? Json(*r.longest_path) : Json(nullptr);
  j["shortest_path"] = r.shortest_path ? Json(*r.shortest_path) : Json(nullptr);
  return j;
}

inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

// Deterministic: no timings, points in grid order.
inline Json report_to_json(const VerificationReport& r) {
  const ClaimSpec& c = r.claim;
  Json params{{"n_min", c.n_min},      {"n_max", c.n_max}, {"players", c.players},
              {"t", c.t},              {"b", c.b},         {"d", c.d},
              {"alliance", c.alliance}, {"all_rotations", c.all_rotations}};
  Json points = Json::array();
  for (const auto& pr : r.points) {
    const auto& g = pr.point;
    Json pj{{"n", g.n},
            {"players", g.seating.players()},
            {"alliances", seating_to_json(g.seating)},
            {"coalition", g.coalition.members()},
            {"rotation", g.rotation},
            {"claimed", g.claimed_win ? "win" : "loss"},
            {"expected", optional_bool(g.expected)},
            {"observed", optional_bool(pr.observed)},
            {"status", to_string(pr.status)},
            {"memo_entries", pr.memo_entries}};
    if (g.skip_reason) pj["reason"] = *g.skip_reason;
    points.push_back(std::move(pj));
  }
  Json j{{"claim", to_string(c.id)},
         {"parameters", std::move(params)},
         {"published_bounds", c.published_bounds},
         {"assert_from", c.assert_from},
         {"points", std::move(points)},
         {"summary", Json{{"points", r.points.size()},
                          {"pass", r.passed},
                          {"fail", r.failed},
                          {"finding", r.findings},
                          {"skipped", r.skipped},
                          {"memo_entries", r.memo_entries_total}}}};
  j["empirical_threshold"] = r.empirical_threshold ? Json(*r.empirical_threshold) : Json(nullptr);
  return j;
}

}  // namespace zeck
