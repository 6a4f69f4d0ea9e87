// Replays a game where a 4-player alliance plays against a pair at n = 30.
// The alliance follows its winning policy; the pair plays its own best moves.
//
//   replay_alliance [n] [alliances]      defaults: 30 "1,2,3,4;5,6"

#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "zeck/json_io.hpp"
#include "zeck/patterns.hpp"
#include "zeck/session.hpp"
#include "zeck/solver.hpp"

using namespace zeck;

int main(int argc, char** argv) {
  try {
    const Value n = argc > 1 ? std::stoull(argv[1]) : 30;
    const auto seating = SeatingConfig::parse(argc > 2 ? argv[2] : "1,2,3,4;5,6");

    std::map<int, std::unique_ptr<CoalitionSolver>> solvers;
    for (int t = 1; t <= seating.team_count(); ++t) {
      solvers[t] = std::make_unique<CoalitionSolver>(seating, seating.team(t));
      std::cout << "team " << t << " " << seating.team(t).to_string() << ": "
                << (solvers[t]->evaluate(initial_state(n), 0) ? "can force a win" : "cannot force a win")
                << '\n';
    }

    Session game(n, seating);
    while (!game.finished()) {
      const int team = game.team_to_move();
      const auto bm = solvers[team]->best_move(game.state(), game.turn());
      std::cout << "turn " << game.turn() + 1 << "  player " << game.to_move() << " (team " << team
                << ")  " << to_token(bm.move) << "  " << describe(bm.move) << '\n';
      game.play(bm.move);
    }
    std::cout << "final state " << state_to_json(game.state()).dump() << "; player "
              << *game.winner() << " (team " << *game.winning_team() << ") made the last move\n";

    const auto steals = detect_steal_pattern(game.moves());
    std::cout << "c1 c1 s2 windows at move";
    if (steals.empty()) std::cout << " (none)";
    for (auto j : steals) std::cout << ' ' << j + 1;
    std::cout << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
