#pragma once

// Forward closure of the game graph from {1^n}.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "zeck/engine.hpp"
#include "zeck/errors.hpp"
#include "zeck/solver.hpp"

namespace zeck {

struct ReachReport {
  Value n = 0;
  std::size_t state_count = 0;
  std::size_t edge_count = 0;
  std::vector<GameState> terminal_states;
  bool acyclic = false;
  // Game lengths in moves; empty when the graph has a cycle.
  std::optional<std::size_t> longest_path;
  std::optional<std::size_t> shortest_path;
};

inline ReachReport reachability(Value n, std::size_t state_cap = default_state_cap()) {
  ReachReport r;
  r.n = n;
  std::map<GameState, std::size_t> index;
  std::vector<GameState> states;
  std::vector<std::vector<std::size_t>> succ;

  auto intern = [&](const GameState& s) {
    auto [it, fresh] = index.try_emplace(s, states.size());
    if (fresh) {
      if (states.size() >= state_cap) throw CapacityError("reachable state limit exceeded", state_cap);
      states.push_back(s);
      succ.emplace_back();
    }
    return std::pair{it->second, fresh};
  };

  std::deque<std::size_t> frontier{intern(GameState::initial(n)).first};
  while (!frontier.empty()) {
    const std::size_t id = frontier.front();
    frontier.pop_front();
    for (const auto& m : legal_moves(states[id])) {
      auto [child, fresh] = intern(apply(states[id], m));
      succ[id].push_back(child);
      if (fresh) frontier.push_back(child);
    }
  }

  const std::size_t count = states.size();
  r.state_count = count;
  std::vector<std::size_t> indegree(count, 0);
  for (const auto& out : succ) {
    r.edge_count += out.size();
    for (std::size_t c : out) ++indegree[c];
  }
  for (std::size_t id = 0; id < count; ++id)
    if (succ[id].empty()) r.terminal_states.push_back(states[id]);

  // Kahn's algorithm: every state is ordered iff there is no cycle.
  std::vector<std::size_t> order;
  order.reserve(count);
  for (std::size_t id = 0; id < count; ++id)
    if (indegree[id] == 0) order.push_back(id);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t c : succ[order[k]])
      if (--indegree[c] == 0) order.push_back(c);
  r.acyclic = order.size() == count;
  if (!r.acyclic) return r;

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> longest(count, 0), shortest(count, kUnset);
  shortest[0] = 0;
  for (std::size_t id : order) {
    if (shortest[id] == kUnset) continue;
    for (std::size_t c : succ[id]) {
      longest[c] = std::max(longest[c], longest[id] + 1);
      shortest[c] = std::min(shortest[c], shortest[id] + 1);
    }
  }
  for (std::size_t id = 0; id < count; ++id) {
    if (!succ[id].empty()) continue;
    r.longest_path = std::max(r.longest_path.value_or(0), longest[id]);
    r.shortest_path = std::min(r.shortest_path.value_or(kUnset), shortest[id]);
  }
  return r;
}

}  // namespace zeck
