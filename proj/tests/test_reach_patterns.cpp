#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zeck/patterns.hpp"
#include "zeck/reach.hpp"

using namespace zeck;

TEST(Reachability, SmallCases) {
  const auto one = reachability(1);
  EXPECT_EQ(one.state_count, 1u);
  ASSERT_EQ(one.terminal_states.size(), 1u);
  EXPECT_EQ(one.terminal_states.front(), initial_state(1));
  EXPECT_TRUE(one.acyclic);
  EXPECT_EQ(one.longest_path, 0u);

  const auto three = reachability(3);
  EXPECT_EQ(three.state_count, 3u);
  EXPECT_EQ(three.terminal_states.size(), 1u);
  EXPECT_EQ(three.longest_path, 2u);
  EXPECT_EQ(three.shortest_path, 2u);

  const auto four = reachability(4);
  EXPECT_EQ(four.state_count, 4u);
  EXPECT_EQ(four.terminal_states.size(), 1u);
  EXPECT_TRUE(four.acyclic);
  EXPECT_EQ(four.longest_path, 3u);
  EXPECT_EQ(four.shortest_path, 2u);
}

TEST(Reachability, MatchesValueOracleStateCounts) {
  for (Value n = 1; n <= 25; ++n)
    EXPECT_EQ(reachability(n).state_count, oracle::reachable(n).size()) << n;
}

TEST(Reachability, AcyclicAndEndsAtZeckendorf) {
  for (Value n = 1; n <= 25; ++n) {
    const auto r = reachability(n);
    EXPECT_TRUE(r.acyclic) << n;
    ASSERT_EQ(r.terminal_states.size(), 1u) << n;
    std::vector<Count> expected(static_cast<std::size_t>(max_index(n)) + 1, 0);
    for (int i : zeckendorf(n).indices) expected[static_cast<std::size_t>(i - 1)] = 1;
    EXPECT_EQ(r.terminal_states.front(), GameState::from_counts(expected)) << n;
    EXPECT_LE(*r.shortest_path, *r.longest_path);
  }
}

TEST(Reachability, CapacityError) {
  EXPECT_THROW(reachability(30, 50), CapacityError);
}

namespace {

const Move c1 = Move::combine_ones();
const Move s2 = Move::split_twos();
const Move a1 = Move::combine_adjacent(1);

}  // namespace

TEST(StealPattern, Examples) {
  EXPECT_EQ(detect_steal_pattern(std::vector<Move>{c1, c1, s2}), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(detect_steal_pattern(std::vector<Move>{c1, a1, s2}).empty());
  EXPECT_TRUE(detect_steal_pattern(std::vector<Move>{c1, c1}).empty());
  EXPECT_EQ(detect_steal_pattern_k(std::vector<Move>{c1, c1, c1, c1, s2, s2}, 2),
            (std::vector<std::size_t>{0}));
  EXPECT_TRUE(detect_steal_pattern_k(std::vector<Move>{c1, c1, c1, s2, s2, s2}, 2).empty());
  EXPECT_EQ(detect_steal_pattern(std::vector<Move>{c1, c1, c1, s2, c1, c1, s2}),
            (std::vector<std::size_t>{1, 4}));
  EXPECT_THROW(detect_steal_pattern_k(std::vector<Move>{}, 0), InvalidArgument);
}

TEST(StealPattern, KOneIsTheBaseDetector) {
  std::mt19937 rng(3);
  const std::vector<Move> alphabet{c1, s2, a1};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Move> moves(rng() % 30);
    for (auto& m : moves) m = alphabet[rng() % alphabet.size()];
    EXPECT_EQ(detect_steal_pattern(moves), detect_steal_pattern_k(moves, 1));
  }
}

TEST(StealPattern, MatchesSlidingWindowOracle) {
  std::mt19937_64 rng(11);
  // Biased toward c1 and s2 so that windows actually occur.
  const std::vector<Move> alphabet{c1, c1, c1, s2, s2, a1, Move::combine_adjacent(2),
                                   Move::split_pair(3)};
  std::size_t total_hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Move> moves(rng() % 40);
    for (auto& m : moves) m = alphabet[rng() % alphabet.size()];
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto got = detect_steal_pattern_k(moves, k);
      ASSERT_EQ(got, oracle::sliding_window(moves, k, c1, s2)) << "trial " << trial << " k " << k;
      total_hits += got.size();
    }
  }
  EXPECT_GT(total_hits, 100u);
}
