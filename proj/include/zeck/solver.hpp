#pragma once

// Exact coalition solver.
//
// "Coalition S has a winning strategy" is decided as a two-sided game: on a
// member's turn the position is won if some move wins, on anyone else's turn
// only if every move wins (non-members are assumed to cooperate against S).
// A move that reaches the Zeckendorf decomposition wins for the mover's side.
//
// Memo key is (counts, turn mod p): the same counts can be reached after
// different numbers of moves, so the mover is not a function of the state.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "zeck/engine.hpp"
#include "zeck/errors.hpp"
#include "zeck/seating.hpp"

namespace zeck {

inline constexpr std::size_t kDefaultStateCap = 10'000'000;

// ZECK_STATE_CAP overrides the default cap on memo entries / reachable states.
inline std::size_t default_state_cap() {
  if (const char* env = std::getenv("ZECK_STATE_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw InvalidArgument(std::string("ZECK_STATE_CAP must be a positive integer, got '") + env +
                          "'");
  }
  return kDefaultStateCap;
}

struct PolicyKey {
  std::vector<Count> counts;  // trimmed
  int turn_mod = 0;

  bool operator==(const PolicyKey&) const = default;
  auto operator<=>(const PolicyKey&) const = default;
};

struct SolveStats {
  std::uint64_t states_visited = 0;  // search calls, memo hits included
  std::uint64_t memo_entries = 0;
  int max_depth = 0;

  bool operator==(const SolveStats&) const = default;
};

struct SolveOutcome {
  bool win = false;
  // Winning move for every solved position where a member moves and wins.
  std::map<PolicyKey, Move> policy;
  SolveStats stats;
};

struct BestMove {
  Move move;
  bool win = false;  // value of the position for the target coalition
};

class CoalitionSolver {
public:
  CoalitionSolver(SeatingConfig seating, Coalition target,
                  std::size_t memo_cap = default_state_cap())
      : seating_(std::move(seating)), target_(std::move(target)), cap_(memo_cap) {
    target_.validate(seating_.players());
  }

  const SeatingConfig& seating() const noexcept { return seating_; }
  const Coalition& target() const noexcept { return target_; }

  // Value for the target of the position with `turn` moves already made.
  // A terminal position is a loss: no member can make the last move from it.
  bool evaluate(const GameState& s, std::uint64_t turn) {
    if (is_terminal(s)) return false;
    return guarded([&] { return search(s, turn_mod(turn), 0); });
  }

  // Canonical-first winning move for a member, canonical-first move that
  // keeps the target losing for a non-member, else the first legal move.
  BestMove best_move(const GameState& s, std::uint64_t turn) {
    const auto moves = legal_moves(s);
    if (moves.empty()) throw NoMove("no legal move: position is terminal");
    return guarded([&] { return pick(s, turn, moves); });
  }

  SolveStats stats() const {
    SolveStats st = stats_;
    st.memo_entries = memo_.size();
    return st;
  }

  std::map<PolicyKey, Move> policy() const {
    std::map<PolicyKey, Move> out;
    for (const auto& [key, entry] : memo_) {
      if (entry.mark != Mark::Win || entry.move < 0 || !target_.contains(key.turn_mod + 1))
        continue;
      const GameState s = GameState::from_counts(key.counts);
      PolicyKey pk{s.trimmed_counts(), key.turn_mod};
      out.emplace(std::move(pk), legal_moves(s)[static_cast<std::size_t>(entry.move)]);
    }
    return out;
  }

private:
  enum class Mark : std::uint8_t { Open, Win, Loss };
  struct Entry {
    Mark mark = Mark::Open;
    std::int32_t move = -1;  // index into legal_moves of the deciding move
  };
  struct Key {
    std::vector<Count> counts;
    int turn_mod = 0;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(k.turn_mod);
      for (Count c : k.counts) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  // An aborted search leaves open marks behind; drop the table so the
  // solver stays usable.
  template <typename F>
  auto guarded(F&& f) -> std::invoke_result_t<F> {
    try {
      return f();
    } catch (...) {
      memo_.clear();
      throw;
    }
  }

  BestMove pick(const GameState& s, std::uint64_t turn, const std::vector<Move>& moves) {
    const int tm = turn_mod(turn);
    const bool member = target_.contains(tm + 1);
    const bool value = search(s, tm, 0);
    for (const auto& m : moves) {
      const GameState child = apply(s, m);
      const bool v = is_terminal(child) ? member : search(child, next_mod(tm), 1);
      if (member && value && v) return {m, value};
      if (!member && !v) return {m, value};
    }
    return {moves.front(), value};
  }

  int turn_mod(std::uint64_t turn) const {
    return static_cast<int>(turn % static_cast<std::uint64_t>(seating_.players()));
  }
  int next_mod(int tm) const { return (tm + 1) % seating_.players(); }

  bool search(const GameState& s, int tm, int depth) {
    ++stats_.states_visited;
    Key key{std::vector<Count>(s.counts().begin(), s.counts().end()), tm};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second.mark == Mark::Open)
        throw InternalInvariant("cycle in the game graph at depth " + std::to_string(depth));
      return it->second.mark == Mark::Win;
    }
    if (memo_.size() >= cap_) throw CapacityError("solver memo table full", cap_);
    if (depth > stats_.max_depth) stats_.max_depth = depth;

    // Element references survive rehashing.
    Entry& entry = memo_.emplace(std::move(key), Entry{}).first->second;
    const bool member = target_.contains(tm + 1);
    const auto moves = legal_moves(s);
    bool result = !member;
    std::int32_t deciding = -1;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const GameState child = apply(s, moves[k]);
      const bool v = is_terminal(child) ? member : search(child, next_mod(tm), depth + 1);
      if (v == member) {
        result = member;
        deciding = static_cast<std::int32_t>(k);
        break;
      }
    }
    entry.mark = result ? Mark::Win : Mark::Loss;
    entry.move = deciding;
    return result;
  }

  SeatingConfig seating_;
  Coalition target_;
  std::size_t cap_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
  SolveStats stats_;
};

// Does `target` have a winning strategy from initial_state(n), player 1 first?
inline SolveOutcome solve(Value n, const SeatingConfig& seating, const Coalition& target,
                          std::size_t memo_cap = default_state_cap()) {
  const GameState start = GameState::initial(n);
  CoalitionSolver solver(seating, target, memo_cap);
  SolveOutcome out;
  out.win = solver.evaluate(start, 0);
  out.policy = solver.policy();
  out.stats = solver.stats();
  return out;
}

inline BestMove best_move(const GameState& s, std::uint64_t turn, const SeatingConfig& seating,
                          const Coalition& target, std::size_t memo_cap = default_state_cap()) {
  CoalitionSolver solver(seating, target, memo_cap);
  return solver.best_move(s, turn);
}

}  // namespace zeck
