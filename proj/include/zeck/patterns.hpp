#pragma once

// Detectors for the move window used by the strategy-stealing arguments:
// k times 1+1=2, k more times 1+1=2, then k times 2+2=1+3. Replacing the
// middle block by 1+2=3 reaches the same position k moves earlier.

#include <span>
#include <vector>

#include "zeck/engine.hpp"
#include "zeck/errors.hpp"

namespace zeck {

// Every start j with moves[j .. j+3k-1] matching the window.
inline std::vector<std::size_t> detect_steal_pattern_k(std::span<const Move> moves, std::size_t k) {
  if (k == 0) throw InvalidArgument("pattern block length k must be >= 1");
  std::vector<std::size_t> hits;
  const std::size_t width = 3 * k;
  if (moves.size() < width) return hits;

  // run_c1[j] = length of the CombineOnes run starting at j, likewise for s2.
  std::vector<std::size_t> run_c1(moves.size() + 1, 0), run_s2(moves.size() + 1, 0);
  for (std::size_t j = moves.size(); j-- > 0;) {
    run_c1[j] = moves[j].kind == MoveKind::CombineOnes ? run_c1[j + 1] + 1 : 0;
    run_s2[j] = moves[j].kind == MoveKind::SplitTwos ? run_s2[j + 1] + 1 : 0;
  }
  for (std::size_t j = 0; j + width <= moves.size(); ++j)
    if (run_c1[j] >= 2 * k && run_s2[j + 2 * k] >= k) hits.push_back(j);
  return hits;
}

inline std::vector<std::size_t> detect_steal_pattern(std::span<const Move> moves) {
  return detect_steal_pattern_k(moves, 1);
}

}  // namespace zeck
