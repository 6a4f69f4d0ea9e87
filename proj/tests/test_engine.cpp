#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "zeck/engine.hpp"
#include "zeck/session.hpp"

using namespace zeck;

namespace {

GameState state(std::vector<Count> counts) { return GameState::from_counts(counts); }

oracle::Parts to_parts(const GameState& s) {
  oracle::Parts p;
  for (int i = 1; i <= static_cast<int>(s.counts().size()); ++i)
    for (Count c = 0; c < s.count(i); ++c) p.push_back(fib_value(i));
  return p;
}

GameState from_parts(const oracle::Parts& parts) {
  std::vector<Count> counts(64, 0);
  for (auto v : parts) {
    int i = 1;
    while (fib_value(i) != v) ++i;
    ++counts[static_cast<std::size_t>(i - 1)];
  }
  return GameState::from_counts(counts);
}

}  // namespace

TEST(InitialState, AllOnes) {
  EXPECT_EQ(initial_state(1).trimmed_counts(), (std::vector<Count>{1}));
  EXPECT_EQ(initial_state(5).trimmed_counts(), (std::vector<Count>{5}));
  EXPECT_EQ(initial_state(30).trimmed_counts(), (std::vector<Count>{30}));
  EXPECT_EQ(initial_state(30).counts().size(), 8u);  // max_index(30) + 1
  EXPECT_THROW(initial_state(0), InvalidArgument);
}

TEST(GameState, FromCountsNormalizesCapacity) {
  const auto a = GameState::from_counts(std::vector<Count>{1, 0, 1, 0, 0, 0, 0});
  const auto b = GameState::from_counts(std::vector<Count>{1, 0, 1});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.n(), 4u);
  EXPECT_EQ(a.total(), 4u);
  EXPECT_THROW(GameState::from_counts(std::vector<Count>{0, 0}), InvalidArgument);
}

TEST(LegalMoves, Examples) {
  EXPECT_EQ(legal_moves(state({5})), (std::vector<Move>{Move::combine_ones()}));
  EXPECT_TRUE(legal_moves(state({1, 0, 1})).empty());
  EXPECT_EQ(legal_moves(state({1, 1})), (std::vector<Move>{Move::combine_adjacent(1)}));
}

TEST(LegalMoves, CanonicalOrder) {
  // {1^2, 2^2, 3, 5^2}: every rule kind is available.
  const auto moves = legal_moves(state({2, 2, 1, 2}));
  const std::vector<Move> expected{Move::combine_ones(), Move::combine_adjacent(1),
                                   Move::combine_adjacent(2), Move::combine_adjacent(3),
                                   Move::split_twos(), Move::split_pair(4)};
  EXPECT_EQ(moves, expected);
  EXPECT_TRUE(std::is_sorted(moves.begin(), moves.end()));
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(state({0, 2}), Move::split_twos()), state({1, 0, 1}));
  EXPECT_EQ(apply(state({0, 0, 2}), Move::split_pair(3)), state({1, 0, 0, 1}));
  EXPECT_EQ(apply(state({4}), Move::combine_ones()), state({2, 1}));
}

TEST(Apply, IllegalMoveNamesThePrecondition) {
  try {
    apply(state({1, 0, 1}), Move::combine_ones());
    FAIL() << "expected IllegalMove";
  } catch (const IllegalMove& e) {
    EXPECT_NE(std::string(e.what()).find("count(F_1) >= 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(apply(state({0, 1}), Move::split_twos()), IllegalMove);
  EXPECT_THROW(apply(state({1, 0, 1}), Move::combine_adjacent(2)), IllegalMove);
  EXPECT_THROW(apply(state({0, 0, 1}), Move::split_pair(3)), IllegalMove);
  EXPECT_THROW(apply(state({4}), Move::split_pair(2)), IllegalMove);
  EXPECT_THROW(apply(state({4}), Move::combine_adjacent(40)), IllegalMove);
}

TEST(IsTerminal, Examples) {
  EXPECT_FALSE(is_terminal(state({3})));
  EXPECT_TRUE(is_terminal(state({0, 0, 1})));
  EXPECT_TRUE(is_terminal(state({0, 1, 0, 0, 1})));  // 2 + 8
}

TEST(MoveTokens, RoundTripAndErrors) {
  for (const Move m : {Move::combine_ones(), Move::combine_adjacent(1), Move::combine_adjacent(7),
                       Move::split_twos(), Move::split_pair(3), Move::split_pair(12)})
    EXPECT_EQ(parse_move(to_token(m)), m);
  EXPECT_EQ(to_token(Move::combine_adjacent(4)), "adj:4");
  EXPECT_EQ(to_token(Move::split_pair(3)), "split:3");
  for (const char* bad : {"", "c2", "adj:", "adj:0", "adj:x", "split:2", "split:3x", "s3", "ADJ:1"})
    EXPECT_THROW(parse_move(bad), InvalidArgument) << bad;
}

TEST(MoveTokens, Describe) {
  EXPECT_EQ(describe(Move::combine_ones()), "1+1=2");
  EXPECT_EQ(describe(Move::combine_adjacent(1)), "1+2=3");
  EXPECT_EQ(describe(Move::combine_adjacent(4)), "5+8=13");
  EXPECT_EQ(describe(Move::split_twos()), "2+2=1+3");
  EXPECT_EQ(describe(Move::split_pair(3)), "3+3=1+5");
}

TEST(EngineProperty, LegalMovesMatchValueOracle) {
  for (Value n = 1; n <= 20; ++n) {
    for (const auto& parts : oracle::reachable(n)) {
      const GameState s = from_parts(parts);
      std::set<oracle::Parts> ours;
      for (const auto& m : legal_moves(s)) ours.insert(to_parts(apply(s, m)));
      EXPECT_EQ(ours, oracle::successors(parts)) << "n=" << n;
    }
  }
}

TEST(EngineProperty, ConservationUnderRandomPlay) {
  std::mt19937_64 rng(20240611);
  std::size_t applications = 0;
  while (applications < 10'000) {
    const Value n = std::uniform_int_distribution<Value>(2, 40)(rng);
    GameState s = initial_state(n);
    while (!is_terminal(s)) {
      const auto moves = legal_moves(s);
      const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      const GameState next = apply(s, m);
      ASSERT_EQ(next.total(), n);
      ASSERT_EQ(next.n(), n);
      ASSERT_EQ(apply(s, m), next);  // pure
      s = next;
      ++applications;
    }
  }
}

TEST(EngineProperty, TerminalityEquivalence) {
  for (Value n = 1; n <= 25; ++n) {
    std::vector<Count> zeck_counts(static_cast<std::size_t>(max_index(n)) + 1, 0);
    for (int i : zeckendorf(n).indices) zeck_counts[static_cast<std::size_t>(i - 1)] = 1;
    const GameState zeck_state = GameState::from_counts(zeck_counts);
    for (const auto& parts : oracle::reachable(n)) {
      const GameState s = from_parts(parts);
      const bool terminal = is_terminal(s);
      EXPECT_EQ(terminal, legal_moves(s).empty());
      EXPECT_EQ(terminal, s == zeck_state);
    }
  }
}

TEST(EngineProperty, LegalMovesDeterministic) {
  const GameState s = state({3, 2, 2, 1});
  EXPECT_EQ(legal_moves(s), legal_moves(GameState(s)));
}

TEST(Session, SingleForcedMove) {
  Session s(2, SeatingConfig::singletons(2));
  EXPECT_EQ(s.to_move(), 1);
  s.play(Move::combine_ones());
  EXPECT_TRUE(s.finished());
  EXPECT_EQ(s.winner(), 1);
  EXPECT_EQ(s.winning_team(), 1);
}

TEST(Session, ThreeOnesSecondPlayerWins) {
  Session s(3, SeatingConfig::singletons(2));
  s = session_apply(s, Move::combine_ones());
  EXPECT_FALSE(s.finished());
  EXPECT_EQ(s.to_move(), 2);
  s = session_apply(s, Move::combine_adjacent(1));
  EXPECT_TRUE(s.finished());
  EXPECT_EQ(s.winner(), 2);
  EXPECT_EQ(s.state(), state({0, 0, 1}));
}

TEST(Session, MoveAfterEndIsGameOver) {
  Session s(2, SeatingConfig::singletons(3));
  s.play(Move::combine_ones());
  EXPECT_THROW(s.play(Move::combine_ones()), GameOver);
  EXPECT_THROW(session_apply(s, Move::split_twos()), GameOver);
}

TEST(Session, IllegalMoveLeavesSessionUnchanged) {
  Session s(5, SeatingConfig::singletons(3));
  EXPECT_THROW(s.play(Move::split_twos()), IllegalMove);
  EXPECT_EQ(s.turn(), 0u);
  EXPECT_EQ(s.state(), initial_state(5));
}

TEST(Session, NEqualsOneHasNoWinner) {
  Session s(1, SeatingConfig::singletons(2));
  EXPECT_TRUE(s.finished());
  EXPECT_FALSE(s.winner().has_value());
}

TEST(Session, ReplayReproducesState) {
  std::mt19937 rng(7);
  Session live(17, SeatingConfig::parse("1,3;2"));
  while (!live.finished()) {
    const auto moves = legal_moves(live.state());
    live.play(moves[rng() % moves.size()]);
    const Session replayed = Session::replay(17, live.seating(), live.moves());
    ASSERT_EQ(replayed.state(), live.state());
    ASSERT_EQ(replayed.turn(), live.turn());
  }
  EXPECT_EQ(live.winning_team(), live.seating().team_of(*live.winner()));
}
