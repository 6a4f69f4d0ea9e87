#pragma once

// Game state and the four move rules of the Zeckendorf game.
//
// A state is the unordered list of Fibonacci parts, stored as a counts array:
// position k holds the multiplicity of F_{k+1}. The array always has
// max_index(n) + 1 slots, so equal states have equal arrays.

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeck/errors.hpp"
#include "zeck/fibzeck.hpp"

namespace zeck {

using Count = std::uint32_t;

class GameState {
public:
  static GameState initial(Value n) {
    detail::check_n(n, "initial_state");
    GameState s(n);
    s.counts_[0] = static_cast<Count>(n);
    return s;
  }

  // counts[k] = multiplicity of F_{k+1}; n is recomputed from the parts.
  static GameState from_counts(std::span<const Count> counts) {
    Value total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      const Value f = fib_value(static_cast<long long>(k + 1));
      if (f > kMaxN || counts[k] > kMaxN / f || total + counts[k] * f > kMaxN)
        throw InvalidArgument("state total exceeds " + std::to_string(kMaxN));
      total += counts[k] * f;
    }
    if (total == 0) throw InvalidArgument("state must contain at least one part");
    GameState s(total);
    // Every part value is <= total, so nothing nonzero lies past capacity.
    for (std::size_t k = 0; k < counts.size() && k < s.counts_.size(); ++k)
      s.counts_[k] = counts[k];
    return s;
  }

  static GameState from_counts(const std::vector<Count>& counts) {
    return from_counts(std::span<const Count>(counts));
  }

  Value n() const noexcept { return n_; }

  std::span<const Count> counts() const noexcept { return counts_; }

  // Multiplicity of F_i, 1-based; zero outside the stored range.
  Count count(int i) const noexcept {
    if (i < 1 || static_cast<std::size_t>(i) > counts_.size()) return 0;
    return counts_[static_cast<std::size_t>(i - 1)];
  }

  std::vector<Count> trimmed_counts() const {
    std::size_t len = counts_.size();
    while (len > 0 && counts_[len - 1] == 0) --len;
    return {counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(len)};
  }

  std::size_t part_count() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
  }

  Value total() const {
    Value t = 0;
    for (std::size_t k = 0; k < counts_.size(); ++k)
      t += counts_[k] * fib_value(static_cast<long long>(k + 1));
    return t;
  }

  bool operator==(const GameState&) const = default;
  auto operator<=>(const GameState& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return counts_ <=> o.counts_;
  }

private:
  friend class Mover;
  explicit GameState(Value n)
      : n_(n), counts_(static_cast<std::size_t>(max_index(n)) + 1, 0) {}

  Value n_;
  std::vector<Count> counts_;
};

inline GameState initial_state(Value n) { return GameState::initial(n); }

// Declaration order is the canonical move order.
enum class MoveKind : std::uint8_t { CombineOnes, CombineAdjacent, SplitTwos, SplitPair };

struct Move {
  MoveKind kind = MoveKind::CombineOnes;
  int index = 1;  // F_index is the lowest part consumed

  static constexpr Move combine_ones() { return {MoveKind::CombineOnes, 1}; }
  static constexpr Move combine_adjacent(int i) { return {MoveKind::CombineAdjacent, i}; }
  static constexpr Move split_twos() { return {MoveKind::SplitTwos, 2}; }
  static constexpr Move split_pair(int i) { return {MoveKind::SplitPair, i}; }

  bool operator==(const Move&) const = default;
  auto operator<=>(const Move&) const = default;
};

// "c1", "adj:i", "s2", "split:i"
inline std::string to_token(const Move& m) {
  switch (m.kind) {
    case MoveKind::CombineOnes: return "c1";
    case MoveKind::CombineAdjacent: return "adj:" + std::to_string(m.index);
    case MoveKind::SplitTwos: return "s2";
    case MoveKind::SplitPair: return "split:" + std::to_string(m.index);
  }
  return {};
}

inline Move parse_move(std::string_view token) {
  if (token == "c1") return Move::combine_ones();
  if (token == "s2") return Move::split_twos();
  auto parse_index = [&](std::string_view prefix, int min_index) {
    std::string_view rest = token.substr(prefix.size());
    int i = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), i);
    if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size())
      throw InvalidArgument("bad move index in token '" + std::string(token) + "'");
    if (i < min_index)
      throw InvalidArgument("move token '" + std::string(token) + "' needs index >= " +
                            std::to_string(min_index));
    return i;
  };
  if (token.starts_with("adj:")) return Move::combine_adjacent(parse_index("adj:", 1));
  if (token.starts_with("split:")) return Move::split_pair(parse_index("split:", 3));
  throw InvalidArgument("unknown move token '" + std::string(token) + "'");
}

// Arithmetic form, e.g. "2+2=1+3" or "3+5=8".
inline std::string describe(const Move& m) {
  auto f = [](int i) { return std::to_string(fib_value(i)); };
  switch (m.kind) {
    case MoveKind::CombineOnes: return "1+1=2";
    case MoveKind::CombineAdjacent:
      return f(m.index) + "+" + f(m.index + 1) + "=" + f(m.index + 2);
    case MoveKind::SplitTwos: return "2+2=1+3";
    case MoveKind::SplitPair:
      return f(m.index) + "+" + f(m.index) + "=" + f(m.index - 2) + "+" + f(m.index + 1);
  }
  return {};
}

inline std::ostream& operator<<(std::ostream& os, const Move& m) { return os << to_token(m); }

inline bool is_terminal(const GameState& s) { return is_zeckendorf(s.counts()); }

inline std::vector<Move> legal_moves(const GameState& s) {
  std::vector<Move> out;
  const auto c = s.counts();
  const int cap = static_cast<int>(c.size());
  if (c[0] >= 2) out.push_back(Move::combine_ones());
  for (int i = 1; i + 2 <= cap; ++i)
    if (c[i - 1] >= 1 && c[i] >= 1) out.push_back(Move::combine_adjacent(i));
  if (cap >= 3 && c[1] >= 2) out.push_back(Move::split_twos());
  for (int i = 3; i + 1 <= cap; ++i)
    if (c[i - 1] >= 2) out.push_back(Move::split_pair(i));
  return out;
}

class Mover {
public:
  static GameState apply(const GameState& s, const Move& m) {
    GameState next = s;
    auto& c = next.counts_;
    const int cap = static_cast<int>(c.size());
    auto need = [&](int i, Count k) {
      if (s.count(i) < k)
        throw IllegalMove(to_token(m) + " requires count(F_" + std::to_string(i) + ") >= " +
                          std::to_string(k) + ", have " + std::to_string(s.count(i)));
    };
    auto slot = [&](int i) -> Count& {
      if (i < 1 || i > cap)
        throw IllegalMove(to_token(m) + " would create F_" + std::to_string(i) +
                          " beyond the total " + std::to_string(s.n()));
      return c[static_cast<std::size_t>(i - 1)];
    };
    switch (m.kind) {
      case MoveKind::CombineOnes:
        need(1, 2);
        slot(1) -= 2;
        slot(2) += 1;
        break;
      case MoveKind::CombineAdjacent:
        if (m.index < 1) throw IllegalMove("adj requires index >= 1");
        need(m.index, 1);
        need(m.index + 1, 1);
        slot(m.index + 2) += 1;
        slot(m.index) -= 1;
        slot(m.index + 1) -= 1;
        break;
      case MoveKind::SplitTwos:
        need(2, 2);
        slot(3) += 1;
        slot(2) -= 2;
        slot(1) += 1;
        break;
      case MoveKind::SplitPair:
        if (m.index < 3) throw IllegalMove("split requires index >= 3");
        need(m.index, 2);
        slot(m.index + 1) += 1;
        slot(m.index) -= 2;
        slot(m.index - 2) += 1;
        break;
    }
    return next;
  }
};

inline GameState apply(const GameState& s, const Move& m) { return Mover::apply(s, m); }

}  // namespace zeck
