#pragma once

// Fibonacci numbers with the shifted indexing F_1 = 1, F_2 = 2, F_3 = 3, ...
// and greedy Zeckendorf decomposition.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "zeck/errors.hpp"

namespace zeck {

using Value = std::uint64_t;

// Largest n accepted anywhere n is user input.
inline constexpr Value kMaxN = 1'000'000'000;

namespace detail {

inline const std::vector<Value>& fib_table() {
  // table[i] = F_i, table[0] unused. Stops at the last value that fits.
  static const std::vector<Value> table = [] {
    std::vector<Value> t{0, 1, 2};
    for (;;) {
      const Value a = t[t.size() - 1];
      const Value b = t[t.size() - 2];
      if (a > std::numeric_limits<Value>::max() - b) break;
      t.push_back(a + b);
    }
    return t;
  }();
  return table;
}

inline void check_n(Value n, const char* what) {
  if (n == 0) throw InvalidArgument(std::string(what) + ": n must be >= 1");
  if (n > kMaxN)
    throw InvalidArgument(std::string(what) + ": n must be <= " + std::to_string(kMaxN));
}

}  // namespace detail

// F_i. Throws InvalidArgument for i < 1, OverflowError if F_i exceeds 64 bits.
inline Value fib_value(long long i) {
  if (i < 1) throw InvalidArgument("fib_value: index must be >= 1, got " + std::to_string(i));
  const auto& t = detail::fib_table();
  if (static_cast<unsigned long long>(i) >= t.size())
    throw OverflowError("fib_value: F_" + std::to_string(i) + " exceeds 64-bit range");
  return t[static_cast<std::size_t>(i)];
}

// Largest i with F_i <= n.
inline int max_index(Value n) {
  if (n == 0) throw InvalidArgument("max_index: n must be >= 1");
  const auto& t = detail::fib_table();
  int i = 1;
  while (static_cast<std::size_t>(i + 1) < t.size() && t[i + 1] <= n) ++i;
  return i;
}

// Strictly increasing Fibonacci indices, pairwise non-adjacent.
struct Decomposition {
  std::vector<int> indices;

  Value sum() const {
    Value s = 0;
    for (int i : indices) s += fib_value(i);
    return s;
  }
  bool operator==(const Decomposition&) const = default;
};

inline Decomposition zeckendorf(Value n) {
  detail::check_n(n, "zeckendorf");
  Decomposition d;
  Value rest = n;
  int i = max_index(n);
  while (rest > 0) {
    while (fib_value(i) > rest) --i;
    d.indices.push_back(i);
    rest -= fib_value(i);
    i -= 2;
  }
  std::reverse(d.indices.begin(), d.indices.end());
  return d;
}

// counts[k] is the multiplicity of F_{k+1}.
template <typename Count>
bool is_zeckendorf(std::span<const Count> counts) {
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 1) return false;
    if (counts[k] == 1 && k + 1 < counts.size() && counts[k + 1] != 0) return false;
  }
  return true;
}

template <typename Count>
bool is_zeckendorf(const std::vector<Count>& counts) {
  return is_zeckendorf(std::span<const Count>(counts));
}

}  // namespace zeck
