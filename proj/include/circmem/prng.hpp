#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace circmem::rng {

/// Unbiased draw from [0, bound) via rejection. std::mt19937_64's output
/// sequence is fully specified, and avoiding std::uniform_int_distribution
/// keeps draws identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = gen();
    if (x < limit) return x % bound;
  }
}

inline std::int64_t uniform_int(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(uniform_below(gen, span));
}

/// Fisher-Yates over 0..n-1.
inline std::vector<int> random_permutation(std::mt19937_64& gen, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

}  // namespace circmem::rng
