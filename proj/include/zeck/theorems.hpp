#pragma once

// Verification harness: each winning-strategy claim is expanded into a grid
// of (n, seating, coalition) points, every point is solved exactly and the
// observed outcome is compared with the claimed one.
//
// Claims are statements "for all n >= bound". Points with n >= assert_from
// are asserted; points below it are recorded as findings without a verdict,
// and the empirical threshold is reported next to the published bounds.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "zeck/errors.hpp"
#include "zeck/seating.hpp"
#include "zeck/solver.hpp"

namespace zeck {

enum class ClaimId {
  TwoPlayer,      // p = 2: player 2 wins for n > 2
  NoWinnerMulti,  // p >= 3: no single player wins for n >= 5
  TeamsK,         // t teams of k = t-1 consecutive players: no team wins
  Alliance4v2,    // p = 6, 4 vs 2: the 4-player alliance wins
  BigVs2,         // p >= 7, p-2 vs 2: the big alliance wins
  Offset2b,       // > 2/3 of players, offset-b condition, 2b in a row: alliance wins
  Offset3b,       // offset-b condition, 3b in a row: alliance wins
  Big2dVsD,       // p = 3d, 2d consecutive vs d consecutive: big alliance wins
};

inline constexpr ClaimId kAllClaims[] = {ClaimId::TwoPlayer, ClaimId::NoWinnerMulti,
                                         ClaimId::TeamsK,    ClaimId::Alliance4v2,
                                         ClaimId::BigVs2,    ClaimId::Offset2b,
                                         ClaimId::Offset3b,  ClaimId::Big2dVsD};

inline std::string to_string(ClaimId id) {
  switch (id) {
    case ClaimId::TwoPlayer: return "TWO_PLAYER";
    case ClaimId::NoWinnerMulti: return "NO_WINNER_MULTI";
    case ClaimId::TeamsK: return "TEAMS_K";
    case ClaimId::Alliance4v2: return "ALLIANCE_4V2";
    case ClaimId::BigVs2: return "BIG_VS_2";
    case ClaimId::Offset2b: return "OFFSET_2B";
    case ClaimId::Offset3b: return "OFFSET_3B";
    case ClaimId::Big2dVsD: return "BIG_2D_VS_D";
  }
  return {};
}

inline ClaimId parse_claim_id(std::string_view text) {
  for (ClaimId id : kAllClaims)
    if (to_string(id) == text) return id;
  throw InvalidArgument("unknown claim id '" + std::string(text) + "'");
}

struct ClaimSpec {
  ClaimId id = ClaimId::TwoPlayer;
  Value n_min = 1;
  Value n_max = 1;
  std::vector<int> players;    // player counts swept (NO_WINNER_MULTI, BIG_VS_2, OFFSET_*)
  int t = 3;                   // TEAMS_K team count, k = t - 1
  int b = 1;                   // OFFSET_* offset
  int d = 1;                   // BIG_2D_VS_D small alliance size
  std::vector<int> alliance;   // OFFSET_* alliance before rotation
  bool all_rotations = true;
  std::vector<Value> published_bounds;
  Value assert_from = 1;
};

namespace detail {

// Longest circular run of consecutive seats held by `members`.
inline int longest_run(const Coalition& members, int players) {
  if (static_cast<int>(members.size()) >= players) return players;
  int best = 0;
  for (int start = 1; start <= players; ++start) {
    int len = 0;
    while (len < players && members.contains((start - 1 + len) % players + 1)) ++len;
    best = std::max(best, len);
  }
  return best;
}

inline bool is_block(const Coalition& members, int players) {
  return longest_run(members, players) == static_cast<int>(members.size());
}

// Every non-member i has (i - b) mod p on the alliance.
inline bool offset_condition(const Coalition& alliance, int players, int b) {
  for (int i = 1; i <= players; ++i) {
    if (alliance.contains(i)) continue;
    const int back = ((i - 1 - b) % players + players) % players + 1;
    if (!alliance.contains(back)) return false;
  }
  return true;
}

inline Coalition block(int first, int size, int players) {
  std::vector<int> m;
  for (int k = 0; k < size; ++k) m.push_back((first - 1 + k) % players + 1);
  return Coalition(std::move(m));
}

}  // namespace detail

// Recompute the published bounds and the assertion start from the parameters.
inline void refresh_bounds(ClaimSpec& c) {
  const int p = c.players.empty() ? 0 : c.players.front();
  switch (c.id) {
    case ClaimId::TwoPlayer: c.published_bounds = {3}; break;
    case ClaimId::NoWinnerMulti: c.published_bounds = {5, 13}; c.assert_from = 5; return;
    case ClaimId::TeamsK: {
      const Value k = static_cast<Value>(std::max(c.t - 1, 0));
      c.published_bounds = {2 * k * k + 4 * k};
      if (c.t == 3) c.published_bounds.push_back(30);
      break;
    }
    case ClaimId::Alliance4v2: c.published_bounds = {30}; break;
    case ClaimId::BigVs2:
      c.published_bounds = p >= 8 ? std::vector<Value>{22, 32} : std::vector<Value>{32};
      break;
    case ClaimId::Offset2b:
      c.published_bounds = {static_cast<Value>(std::max(4 * p * c.b + 2 * p - 2 * c.b, 1))};
      break;
    case ClaimId::Offset3b:
      c.published_bounds = {static_cast<Value>(std::max(2 * p + 4 * c.b, 1))};
      break;
    case ClaimId::Big2dVsD:
      c.published_bounds = {static_cast<Value>(12 * c.d * c.d + 4 * c.d)};
      break;
  }
  c.assert_from = *std::max_element(c.published_bounds.begin(), c.published_bounds.end());
}

inline ClaimSpec default_claim(ClaimId id) {
  ClaimSpec c;
  c.id = id;
  switch (id) {
    case ClaimId::TwoPlayer: c.n_min = 3; c.n_max = 25; c.players = {2}; break;
    case ClaimId::NoWinnerMulti: c.n_min = 5; c.n_max = 22; c.players = {3, 4, 5, 6}; break;
    case ClaimId::TeamsK: c.n_min = 16; c.n_max = 30; c.t = 3; c.players = {6}; break;
    case ClaimId::Alliance4v2: c.n_min = 5; c.n_max = 30; c.players = {6}; break;
    case ClaimId::BigVs2: c.n_min = 5; c.n_max = 32; c.players = {7}; break;
    case ClaimId::Offset2b:
      c.n_min = 5; c.n_max = 22; c.players = {4}; c.b = 1; c.alliance = {1, 2, 3};
      break;
    case ClaimId::Offset3b:
      c.n_min = 5; c.n_max = 22; c.players = {4}; c.b = 1; c.alliance = {1, 2, 3};
      break;
    case ClaimId::Big2dVsD: c.n_min = 2; c.n_max = 22; c.d = 1; c.players = {3}; break;
  }
  refresh_bounds(c);
  return c;
}

inline std::vector<ClaimSpec> claim_catalog() {
  std::vector<ClaimSpec> out;
  for (ClaimId id : kAllClaims) out.push_back(default_claim(id));
  return out;
}

struct GridPoint {
  Value n = 0;
  SeatingConfig seating = SeatingConfig::singletons(1);
  Coalition coalition;
  int rotation = 0;
  bool claimed_win = false;            // what the claim says about this coalition
  std::optional<bool> expected;        // set when n >= assert_from
  std::optional<std::string> skip_reason;
};

enum class PointStatus { Pass, Fail, Finding, Skipped };

inline std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Pass: return "pass";
    case PointStatus::Fail: return "fail";
    case PointStatus::Finding: return "finding";
    case PointStatus::Skipped: return "skipped";
  }
  return {};
}

struct PointResult {
  GridPoint point;
  std::optional<bool> observed;
  PointStatus status = PointStatus::Skipped;
  std::uint64_t memo_entries = 0;
};

struct VerificationReport {
  ClaimSpec claim;
  std::vector<PointResult> points;
  std::optional<Value> empirical_threshold;
  std::size_t passed = 0, failed = 0, findings = 0, skipped = 0;
  std::uint64_t memo_entries_total = 0;
  double elapsed_ms = 0;  // not part of the reproducible output

  bool all_pass() const { return failed == 0 && skipped == 0; }
};

namespace detail {

// Seatings and coalitions for one n, before the expected value is attached.
inline std::vector<GridPoint> points_for(const ClaimSpec& c, Value n) {
  std::vector<GridPoint> out;
  auto rotations = [&](int p) { return c.all_rotations ? p : 1; };
  auto add = [&](int p, std::vector<std::vector<int>> teams, Coalition target, int rot,
                 bool claimed, std::optional<std::string> reason = std::nullopt) {
    GridPoint g;
    g.n = n;
    g.rotation = rot;
    g.claimed_win = claimed;
    g.coalition = std::move(target);
    try {
      g.seating = SeatingConfig::from_teams(p, teams);
    } catch (const InvalidArgument& e) {
      g.seating = SeatingConfig::singletons(std::max(p, 1));
      if (!reason) reason = e.what();
    }
    g.skip_reason = std::move(reason);
    out.push_back(std::move(g));
  };
  auto two_teams = [](const Coalition& a, int p) {
    return std::vector<std::vector<int>>{a.members(), a.complement(p).members()};
  };

  switch (c.id) {
    case ClaimId::TwoPlayer:
      for (int p : c.players) {
        if (p != 2) {
          add(std::max(p, 1), {}, Coalition{1}, 0, true, "needs p = 2");
          continue;
        }
        add(2, {{1}, {2}}, Coalition{2}, 0, true);
        add(2, {{1}, {2}}, Coalition{1}, 0, false);
      }
      break;
    case ClaimId::NoWinnerMulti:
      for (int p : c.players) {
        std::vector<std::vector<int>> teams;
        for (int q = 1; q <= p; ++q) teams.push_back({q});
        for (int m = 1; m <= std::max(p, 1); ++m)
          add(p, teams, Coalition{m}, 0, false,
              p < 3 ? std::optional<std::string>("needs p >= 3") : std::nullopt);
      }
      break;
    case ClaimId::TeamsK: {
      const int t = c.t, k = c.t - 1, p = t * k;
      if (t < 3) {
        add(std::max(p, 1), {{1}}, Coalition{1}, 0, false, "needs t >= 3");
        break;
      }
      // Shifting by a multiple of k only renumbers the teams.
      for (int r = 0; r < (c.all_rotations ? k : 1); ++r) {
        std::vector<std::vector<int>> teams;
        for (int j = 1; j <= t; ++j) teams.push_back(block((j - 1) * k + 1 + r, k, p).members());
        for (int j = 1; j <= t; ++j) {
          const Coalition team(teams[static_cast<std::size_t>(j - 1)]);
          std::optional<std::string> reason;
          if (!is_block(team, p)) reason = "team is not consecutive";
          add(p, teams, team, r, false, reason);
        }
      }
      break;
    }
    case ClaimId::Alliance4v2:
      for (int p : c.players) {
        if (p != 6) {
          add(std::max(p, 1), {}, Coalition{1}, 0, true, "needs p = 6");
          continue;
        }
        for (int r = 0; r < rotations(6); ++r) {
          const Coalition big = block(1 + r, 4, 6);
          add(6, two_teams(big, 6), big, r, true);
        }
      }
      break;
    case ClaimId::BigVs2:
      for (int p : c.players) {
        if (p < 7) {
          add(std::max(p, 1), {}, Coalition{1}, 0, true, "needs p >= 7");
          continue;
        }
        for (int r = 0; r < rotations(p); ++r) {
          const Coalition big = block(1 + r, p - 2, p);
          add(p, two_teams(big, p), big, r, true);
        }
      }
      break;
    case ClaimId::Offset2b:
    case ClaimId::Offset3b:
      for (int p : c.players) {
        const Coalition base(c.alliance);
        for (int r = 0; r < rotations(p); ++r) {
          std::optional<std::string> reason;
          Coalition a = base;
          try {
            base.validate(p);
            a = base.rotated(r, p);
          } catch (const InvalidArgument& e) {
            reason = e.what();
          }
          if (!reason && c.b < 1) reason = "needs b >= 1";
          if (!reason && static_cast<int>(a.size()) >= p) reason = "alliance must leave an opponent";
          if (!reason && !offset_condition(a, p, c.b))
            reason = "offset condition fails: some non-member i has (i-b) mod p off the alliance";
          if (!reason && c.id == ClaimId::Offset2b) {
            if (3 * static_cast<int>(a.size()) <= 2 * p)
              reason = "alliance must hold more than two-thirds of the players";
            else if (longest_run(a, p) < 2 * c.b)
              reason = "alliance needs 2b players in a row";
          }
          if (!reason && c.id == ClaimId::Offset3b && longest_run(a, p) < 3 * c.b)
            reason = "alliance needs 3b players in a row";
          if (reason) {
            add(std::max(p, 1), {}, a.empty() ? Coalition{1} : a, r, true, reason);
          } else {
            add(p, two_teams(a, p), a, r, true);
          }
        }
      }
      break;
    case ClaimId::Big2dVsD: {
      const int d = c.d, p = 3 * d;
      if (d < 1) {
        add(1, {{1}}, Coalition{1}, 0, true, "needs d >= 1");
        break;
      }
      for (int r = 0; r < rotations(p); ++r) {
        const Coalition big = block(1 + r, 2 * d, p);
        add(p, two_teams(big, p), big, r, true);
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

// All grid points of the claim, sorted by (n, p, rotation, coalition).
inline std::vector<GridPoint> expand_grid(const ClaimSpec& c) {
  if (c.n_min < 1 || c.n_max < c.n_min) throw InvalidArgument("grid needs 1 <= n_min <= n_max");
  if (c.n_max > kMaxN) throw InvalidArgument("grid n_max above " + std::to_string(kMaxN));
  std::vector<GridPoint> grid;
  for (Value n = c.n_min; n <= c.n_max; ++n) {
    for (auto& g : detail::points_for(c, n)) {
      if (!g.skip_reason && n >= c.assert_from) g.expected = g.claimed_win;
      grid.push_back(std::move(g));
    }
  }
  std::stable_sort(grid.begin(), grid.end(), [](const GridPoint& a, const GridPoint& b) {
    return std::tuple(a.n, a.seating.players(), a.rotation, a.coalition) <
           std::tuple(b.n, b.seating.players(), b.rotation, b.coalition);
  });
  return grid;
}

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Smallest tested n from which every solved point agrees with the claim.
inline std::optional<Value> empirical_threshold(const std::vector<PointResult>& results) {
  std::map<Value, bool> holds;
  for (const auto& r : results) {
    if (!r.observed) continue;
    auto [it, fresh] = holds.try_emplace(r.point.n, true);
    if (*r.observed != r.point.claimed_win) it->second = false;
  }
  std::optional<Value> threshold;
  for (auto it = holds.rbegin(); it != holds.rend() && it->second; ++it) threshold = it->first;
  return threshold;
}

inline VerificationReport verify(const ClaimSpec& claim, unsigned jobs = default_jobs(),
                                 std::size_t memo_cap = default_state_cap()) {
  const auto started = std::chrono::steady_clock::now();
  VerificationReport report;
  report.claim = claim;
  const auto grid = expand_grid(claim);
  report.points.resize(grid.size());

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(grid.size());
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < grid.size();) {
      PointResult& r = report.points[k];
      r.point = grid[k];
      if (r.point.skip_reason) continue;
      try {
        const SolveOutcome o = solve(r.point.n, r.point.seating, r.point.coalition, memo_cap);
        r.observed = o.win;
        r.memo_entries = o.stats.memo_entries;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& r : report.points) {
    if (r.point.skip_reason) {
      r.status = PointStatus::Skipped;
      ++report.skipped;
    } else if (!r.point.expected) {
      r.status = PointStatus::Finding;
      ++report.findings;
    } else if (*r.observed == *r.point.expected) {
      r.status = PointStatus::Pass;
      ++report.passed;
    } else {
      r.status = PointStatus::Fail;
      ++report.failed;
    }
    report.memo_entries_total += r.memo_entries;
  }
  report.empirical_threshold = empirical_threshold(report.points);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

inline std::optional<Value> find_threshold(ClaimSpec claim, Value n_lo, Value n_hi,
                                           unsigned jobs = default_jobs(),
                                           std::size_t memo_cap = default_state_cap()) {
  claim.n_min = n_lo;
  claim.n_max = n_hi;
  return verify(claim, jobs, memo_cap).empirical_threshold;
}

// Aligned plain-text table.
inline std::string render_text(const VerificationReport& r, bool timing = false) {
  std::ostringstream os;
  os << "claim " << to_string(r.claim.id) << "  n in [" << r.claim.n_min << ", " << r.claim.n_max
     << "]  published bounds:";
  for (Value b : r.claim.published_bounds) os << ' ' << b;
  os << "  asserted from n = " << r.claim.assert_from << '\n';
  os << std::left << std::setw(6) << "n" << std::setw(4) << "p" << std::setw(5) << "rot"
     << std::setw(22) << "teams" << std::setw(18) << "coalition" << std::setw(9) << "claimed"
     << std::setw(10) << "observed" << "status\n";
  for (const auto& pr : r.points) {
    const auto& g = pr.point;
    os << std::left << std::setw(6) << g.n << std::setw(4) << g.seating.players() << std::setw(5)
       << g.rotation << std::setw(22) << g.seating.to_string() << std::setw(18)
       << g.coalition.to_string() << std::setw(9) << (g.claimed_win ? "WIN" : "LOSS")
       << std::setw(10) << (pr.observed ? (*pr.observed ? "WIN" : "LOSS") : "-")
       << to_string(pr.status);
    if (g.skip_reason) os << " (" << *g.skip_reason << ")";
    os << '\n';
  }
  os << "pass " << r.passed << ", fail " << r.failed << ", finding " << r.findings << ", skipped "
     << r.skipped << "; empirical threshold: ";
  if (r.empirical_threshold) os << *r.empirical_threshold; else os << "none";
  if (timing) os << "; " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms";
  os << '\n';
  return os.str();
}

}  // namespace zeck
