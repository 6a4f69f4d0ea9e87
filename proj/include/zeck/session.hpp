#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zeck/engine.hpp"
#include "zeck/errors.hpp"
#include "zeck/seating.hpp"

namespace zeck {

// One game in progress: state, move log, seating and turn counter.
// Player to move is (turn mod p) + 1, so player 1 moves first.
class Session {
public:
  Session(Value n, SeatingConfig seating)
      : state_(GameState::initial(n)), seating_(std::move(seating)) {}

  static Session replay(Value n, SeatingConfig seating, const std::vector<Move>& moves) {
    Session s(n, std::move(seating));
    for (const auto& m : moves) s.play(m);
    return s;
  }

  const GameState& state() const noexcept { return state_; }
  const std::vector<Move>& moves() const noexcept { return moves_; }
  const SeatingConfig& seating() const noexcept { return seating_; }
  std::uint64_t turn() const noexcept { return moves_.size(); }

  int to_move() const { return seating_.player_to_move(turn()); }
  int team_to_move() const { return seating_.team_of(to_move()); }

  bool finished() const { return is_terminal(state_); }

  // The player who made the final move. Empty while the game runs, and for
  // n = 1 where the start position is already terminal.
  std::optional<int> winner() const {
    if (!finished() || moves_.empty()) return std::nullopt;
    return seating_.player_to_move(turn() - 1);
  }
  std::optional<int> winning_team() const {
    if (auto w = winner()) return seating_.team_of(*w);
    return std::nullopt;
  }

  // Throws GameOver after the end, IllegalMove if m is not legal here.
  void play(const Move& m) {
    if (finished()) throw GameOver("game is over; no further moves");
    state_ = apply(state_, m);
    moves_.push_back(m);
  }

private:
  GameState state_;
  std::vector<Move> moves_;
  SeatingConfig seating_;
};

inline Session session_apply(Session s, const Move& m) {
  s.play(m);
  return s;
}

}  // namespace zeck
