#include <gtest/gtest.h>

#include <future>
#include <set>
#include <thread>

#include "oracles.hpp"
#include "zeck/solver.hpp"

using namespace zeck;

namespace {

bool wins(Value n, int p, Coalition c) { return solve(n, SeatingConfig::singletons(p), c).win; }

// Non-empty proper subsets of 1..p.
std::vector<Coalition> proper_coalitions(int p) {
  std::vector<Coalition> out;
  for (unsigned mask = 1; mask + 1 < (1u << p); ++mask) {
    std::vector<int> m;
    for (int q = 1; q <= p; ++q)
      if (mask >> (q - 1) & 1) m.push_back(q);
    out.emplace_back(m);
  }
  return out;
}

bool oracle_wins(Value n, int p, const Coalition& c) {
  return oracle::coalition_wins(oracle::ones(n), 0, p, [&](int q) { return c.contains(q); });
}

}  // namespace

TEST(Solve, Examples) {
  EXPECT_TRUE(wins(2, 2, {1}));
  EXPECT_TRUE(wins(5, 2, {2}));
  EXPECT_FALSE(wins(5, 3, {1}));
  EXPECT_TRUE(wins(4, 3, {2}));
  EXPECT_TRUE(solve(16, SeatingConfig::parse("1,2;3"), Coalition{1, 2}).win);
}

TEST(Solve, FourOnesThreePlayersByTreeEnumeration) {
  // {1^4} -> {1^2,2} -> ({2,2} -> {1,3}) | {1,3}: five nodes in all.
  EXPECT_EQ(oracle::tree_size(oracle::ones(4)), 5u);
  EXPECT_TRUE(oracle_wins(4, 3, {2}));
  EXPECT_FALSE(oracle_wins(4, 3, {1}));
  EXPECT_FALSE(oracle_wins(4, 3, {3}));
  EXPECT_TRUE(wins(4, 3, {2}));
  EXPECT_FALSE(wins(4, 3, {1}));
  EXPECT_FALSE(wins(4, 3, {3}));
}

TEST(Solve, NEqualsOneNobodyWins) {
  for (int p = 1; p <= 4; ++p)
    for (const auto& c : proper_coalitions(p)) EXPECT_FALSE(wins(1, p, c));
  EXPECT_FALSE(wins(1, 1, {1}));
}

TEST(Solve, Errors) {
  const auto seating = SeatingConfig::singletons(3);
  EXPECT_THROW(solve(5, seating, Coalition{}), InvalidArgument);
  EXPECT_THROW(solve(5, seating, Coalition{4}), InvalidArgument);
  EXPECT_THROW(solve(5, seating, Coalition{0}), InvalidArgument);
  EXPECT_THROW(solve(0, seating, Coalition{1}), InvalidArgument);
}

TEST(Solve, CapacityErrorNamesCap) {
  try {
    solve(20, SeatingConfig::singletons(3), Coalition{1}, 10);
    FAIL();
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.cap(), 10u);
    EXPECT_NE(std::string(e.what()).find("cap 10"), std::string::npos);
  }
}

TEST(Solve, AgreesWithUnmemoizedOracle) {
  for (Value n = 1; n <= 9; ++n)
    for (int p = 1; p <= 4; ++p)
      for (const auto& c : p == 1 ? std::vector<Coalition>{{1}} : proper_coalitions(p))
        EXPECT_EQ(wins(n, p, c), oracle_wins(n, p, c)) << "n=" << n << " p=" << p << " " << c.to_string();
}

TEST(SolverProperty, Determinacy) {
  for (Value n = 2; n <= 18; ++n)
    for (int p : {2, 3, 4})
      for (const auto& c : proper_coalitions(p))
        EXPECT_NE(wins(n, p, c), wins(n, p, c.complement(p)))
            << "n=" << n << " p=" << p << " " << c.to_string();
}

TEST(SolverProperty, CoalitionMonotonicity) {
  for (Value n = 2; n <= 14; ++n)
    for (int p : {3, 4}) {
      const auto all = proper_coalitions(p);
      std::map<Coalition, bool> value;
      for (const auto& c : all) value[c] = wins(n, p, c);
      for (const auto& small : all)
        for (const auto& big : all) {
          const bool subset = std::includes(big.members().begin(), big.members().end(),
                                            small.members().begin(), small.members().end());
          if (subset && value[small]) {
            EXPECT_TRUE(value[big]) << n << " " << small.to_string();
          }
        }
    }
}

TEST(SolverProperty, RotationEquivariance) {
  // Shifting the coalition by r while player 1 + r moves first.
  for (Value n = 2; n <= 14; ++n)
    for (int p : {3, 4}) {
      const auto seating = SeatingConfig::singletons(p);
      for (const auto& c : proper_coalitions(p))
        for (int r = 0; r < p; ++r) {
          CoalitionSolver shifted(seating, c.rotated(r, p));
          EXPECT_EQ(wins(n, p, c), shifted.evaluate(initial_state(n), static_cast<std::uint64_t>(r)))
              << "n=" << n << " p=" << p << " " << c.to_string() << " r=" << r;
        }
    }
}

namespace {

// Follows the policy for members and tries every reply for everyone else.
// Returns false if some line ends with a non-member move or leaves the policy.
bool policy_holds(const GameState& s, std::uint64_t turn, int p, const Coalition& c,
                  const std::map<PolicyKey, Move>& policy, std::set<PolicyKey>& checked) {
  const int tm = static_cast<int>(turn % static_cast<std::uint64_t>(p));
  PolicyKey key{s.trimmed_counts(), tm};
  if (checked.count(key)) return true;
  const bool member = c.contains(tm + 1);
  std::vector<Move> to_try;
  if (member) {
    auto it = policy.find(key);
    if (it == policy.end()) return false;
    const auto legal = legal_moves(s);
    if (std::find(legal.begin(), legal.end(), it->second) == legal.end()) return false;
    to_try.push_back(it->second);
  } else {
    to_try = legal_moves(s);
  }
  for (const auto& m : to_try) {
    const GameState child = apply(s, m);
    if (is_terminal(child)) {
      if (!member) return false;
    } else if (!policy_holds(child, turn + 1, p, c, policy, checked)) {
      return false;
    }
  }
  checked.insert(key);
  return true;
}

}  // namespace

TEST(SolverProperty, PolicySoundness) {
  int winning_instances = 0;
  for (Value n = 2; n <= 14; ++n)
    for (int p : {2, 3, 4})
      for (const auto& c : proper_coalitions(p)) {
        const auto out = solve(n, SeatingConfig::singletons(p), c);
        for (const auto& [key, move] : out.policy) {
          const auto legal = legal_moves(GameState::from_counts(key.counts));
          ASSERT_NE(std::find(legal.begin(), legal.end(), move), legal.end());
        }
        if (!out.win) continue;
        ++winning_instances;
        std::set<PolicyKey> checked;
        EXPECT_TRUE(policy_holds(initial_state(n), 0, p, c, out.policy, checked))
            << "n=" << n << " p=" << p << " " << c.to_string();
      }
  EXPECT_GT(winning_instances, 100);
}

TEST(SolverProperty, MemoDeterminism) {
  const auto seating = SeatingConfig::parse("1,2,3,4;5,6");
  const Coalition big{1, 2, 3, 4};
  const auto first = solve(24, seating, big);
  const auto second = solve(24, seating, big);
  EXPECT_EQ(first.win, second.win);
  EXPECT_EQ(first.policy, second.policy);
  EXPECT_EQ(first.stats, second.stats);

  std::vector<std::future<SolveOutcome>> futures;
  for (int k = 0; k < 4; ++k)
    futures.push_back(std::async(std::launch::async, [&] { return solve(24, seating, big); }));
  for (auto& f : futures) {
    const auto o = f.get();
    EXPECT_EQ(o.win, first.win);
    EXPECT_EQ(o.policy, first.policy);
  }
}

TEST(BestMove, Examples) {
  const auto two = SeatingConfig::singletons(2);
  const auto bm = best_move(GameState::from_counts(std::vector<Count>{2}), 0, two, Coalition{1});
  EXPECT_EQ(bm.move, Move::combine_ones());
  EXPECT_TRUE(bm.win);

  const auto five = best_move(initial_state(5), 0, two, Coalition{2});
  EXPECT_TRUE(five.win);
  EXPECT_EQ(five.move, Move::combine_ones());

  EXPECT_THROW(best_move(GameState::from_counts(std::vector<Count>{0, 0, 1}), 0, two, Coalition{1}),
               NoMove);
}

TEST(BestMove, WinningMoveKeepsTheWinAndResistanceKeepsTheLoss) {
  const auto seating = SeatingConfig::singletons(3);
  const Coalition target{2};
  CoalitionSolver solver(seating, target);
  for (Value n = 3; n <= 14; ++n) {
    // Walk one line where every player follows best_move for target {2}.
    GameState s = initial_state(n);
    std::uint64_t turn = 0;
    const bool start_value = solver.evaluate(s, 0);
    while (!is_terminal(s)) {
      const auto bm = solver.best_move(s, turn);
      EXPECT_EQ(bm.win, start_value) << "value changed along optimal play, n=" << n;
      s = apply(s, bm.move);
      ++turn;
    }
    const int last = static_cast<int>((turn - 1) % 3) + 1;
    EXPECT_EQ(target.contains(last), start_value) << "n=" << n;
  }
}

TEST(Seating, ParseAlliances) {
  const auto s = SeatingConfig::parse("1,2,3,4;5,6");
  EXPECT_EQ(s.players(), 6);
  EXPECT_EQ(s.team_count(), 2);
  EXPECT_EQ(s.team(1), (Coalition{1, 2, 3, 4}));
  EXPECT_EQ(s.team_of(6), 2);
  EXPECT_EQ(s.to_string(), "1,2,3,4;5,6");
  EXPECT_EQ(SeatingConfig::parse("2;1", 2).team_of(1), 2);
}

TEST(Seating, ParseErrorsCarryPosition) {
  auto position = [](const char* text, int players = 0) -> std::size_t {
    try {
      SeatingConfig::parse(text, players);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position("1,2;;3"), 4u);
  EXPECT_EQ(position("1,x"), 2u);
  EXPECT_EQ(position("1,2,"), 4u);
  EXPECT_EQ(position("1;0"), 2u);
  EXPECT_EQ(position("1,7", 6), 2u);
  EXPECT_THROW(SeatingConfig::parse("1,2;2,3"), InvalidArgument);  // player on two teams
  EXPECT_THROW(SeatingConfig::parse("1;3"), InvalidArgument);      // player 2 missing
}

TEST(Seating, ParseCoalition) {
  const auto s = SeatingConfig::parse("1,2,3,4;5,6");
  EXPECT_EQ(s.parse_coalition("team2"), (Coalition{5, 6}));
  EXPECT_EQ(s.parse_coalition("2"), (Coalition{2}));
  EXPECT_EQ(s.parse_coalition("6,1"), (Coalition{1, 6}));
  EXPECT_THROW(s.parse_coalition("team3"), ParseError);
  EXPECT_THROW(s.parse_coalition("7"), ParseError);
  EXPECT_THROW(s.parse_coalition(""), ParseError);
  EXPECT_THROW(s.parse_coalition("1,,2"), ParseError);
}

TEST(Seating, RotationAndComplement) {
  EXPECT_EQ((Coalition{5, 6}).rotated(1, 6), (Coalition{1, 6}));
  EXPECT_EQ((Coalition{1, 2}).rotated(-1, 6), (Coalition{1, 6}));
  EXPECT_EQ((Coalition{1, 3}).complement(4), (Coalition{2, 4}));
  EXPECT_EQ(SeatingConfig::singletons(3).player_to_move(4), 2);
}
