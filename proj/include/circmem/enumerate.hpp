#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "circmem/core.hpp"
#include "circmem/errors.hpp"

namespace circmem {

/// Size caps: the naive scan costs O(n^2) per state, the Gray scan O(n).
/// Beyond the Gray cap an explicit override is required.
inline constexpr int kNaiveSizeCap = 22;
inline constexpr int kGraySizeCap = 28;

/// All fixed points of one matrix, as ascending packed indices.
struct FixedPointSet {
  int n = 0;
  std::vector<std::uint64_t> states;

  std::size_t size() const { return states.size(); }

  bool contains(std::uint64_t packed) const {
    return std::binary_search(states.begin(), states.end(), packed);
  }

  BipolarState state_at(std::size_t idx) const { return BipolarState(n, states[idx]); }

  bool operator==(const FixedPointSet&) const = default;
};

enum class EnumerationMethod { Naive, GrayCode };

struct EnumerationStats {
  std::uint64_t states_examined = 0;
  std::uint64_t fixed_found = 0;
  std::chrono::duration<double> wall_time{0};
  EnumerationMethod method = EnumerationMethod::Naive;
  int partitions = 1;
};

struct EnumerationResult {
  FixedPointSet set;
  EnumerationStats stats;
};

namespace detail {

/// Sorts, then asserts the closure the dynamics guarantee: rotating any fixed
/// point yields another fixed point. A failure here is an implementation
/// defect, not bad input.
inline FixedPointSet make_fixed_point_set(int n, std::vector<std::uint64_t> states) {
  std::sort(states.begin(), states.end());
  FixedPointSet set{n, std::move(states)};
  for (std::uint64_t s : set.states)
    if (!set.contains(rotate_packed(s, 1, n)))
      throw std::logic_error("fixed-point set is not closed under rotation");
  return set;
}

/// cols[q * n + i] = entry(i, q): the per-flip field deltas for spin q.
inline std::vector<std::int32_t> column_table(const CirculantMatrix& matrix) {
  const int n = matrix.size();
  std::vector<std::int32_t> cols(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      cols[static_cast<std::size_t>(q) * n + i] = matrix.entry(i, q);
  return cols;
}

inline std::uint64_t gray_code(std::uint64_t t) { return t ^ (t >> 1); }

/// Walks Gray-code positions t in [t_begin, t_end), appending every fixed
/// packed state to `out`.
///
/// The walk maintains the exact field vector: moving from gray(t) to
/// gray(t+1) flips the single bit countr_zero(t+1), which changes one spin
/// and shifts every field component by +-2 * (that spin's column of W). A
/// violation mask rebuilt during the same O(n) pass makes the fixed-point
/// test a single compare per state. Every 2^16 steps the maintained fields
/// are checked against a fresh evaluation; drift would be an arithmetic bug
/// and throws.
inline void scan_gray_block(const GeneratorRow& row, const std::vector<std::int32_t>& cols,
                            std::uint64_t t_begin, std::uint64_t t_end,
                            std::vector<std::uint64_t>& out) {
  if (t_begin >= t_end) return;
  const int n = row.size();
  std::uint64_t word = gray_code(t_begin);

  std::vector<std::int64_t> fields(static_cast<std::size_t>(n));
  compute_fields(row, word, fields.data());
  std::uint64_t violations = 0;
  for (int i = 0; i < n; ++i)
    if (sign_violates(fields[static_cast<std::size_t>(i)], (word >> (n - 1 - i)) & 1u))
      violations |= std::uint64_t{1} << i;
  if (violations == 0) out.push_back(word);

  constexpr std::uint64_t kCheckpointMask = (std::uint64_t{1} << 16) - 1;
  std::vector<std::int64_t> fresh(static_cast<std::size_t>(n));

  for (std::uint64_t t = t_begin; t + 1 < t_end; ++t) {
    const int p = std::countr_zero(t + 1);  // bit flipped between gray(t) and gray(t+1)
    const int q = n - 1 - p;                // position of the flipped spin
    word ^= std::uint64_t{1} << p;
    const std::int64_t delta = ((word >> p) & 1u) ? -2 : +2;

    const std::int32_t* col = cols.data() + static_cast<std::size_t>(q) * n;
    std::uint64_t viol = 0;
    for (int i = 0; i < n; ++i) {
      fields[static_cast<std::size_t>(i)] += delta * col[i];
      viol |= static_cast<std::uint64_t>(
                  sign_violates(fields[static_cast<std::size_t>(i)], (word >> (n - 1 - i)) & 1u))
              << i;
    }
    violations = viol;
    if (violations == 0) out.push_back(word);

    if (((t + 1) & kCheckpointMask) == 0) {
      compute_fields(row, word, fresh.data());
      if (fresh != fields)
        throw std::logic_error("gray-walk checkpoint: incremental fields drifted from direct evaluation");
    }
  }
}

inline void check_gray_cap(int n, bool force_large) {
  if (n > kGraySizeCap && !force_large)
    raise(ErrorCode::SizeTooLarge, "n=" + std::to_string(n) + " exceeds the gray-scan cap " +
                                       std::to_string(kGraySizeCap) +
                                       "; pass the large-size override to proceed");
}

}  // namespace detail

/// Reference enumerator: evaluates the full field vector of every state.
inline EnumerationResult enumerate_naive(const CirculantMatrix& matrix) {
  const int n = matrix.size();
  if (n > kNaiveSizeCap)
    raise(ErrorCode::SizeTooLarge, "n=" + std::to_string(n) + " exceeds the naive-scan cap " +
                                       std::to_string(kNaiveSizeCap));
  const auto start = std::chrono::steady_clock::now();

  // rows[i * n + q] = entry(i, q)
  std::vector<std::int32_t> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < n; ++q) rows[static_cast<std::size_t>(i) * n + q] = matrix.entry(i, q);

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> found;
  for (std::uint64_t word = 0; word < total; ++word) {
    bool fixed = true;
    for (int i = 0; i < n && fixed; ++i) {
      std::int64_t field = 0;
      const std::int32_t* r = rows.data() + static_cast<std::size_t>(i) * n;
      for (int q = 0; q < n; ++q) field += ((word >> (n - 1 - q)) & 1u) ? -r[q] : r[q];
      fixed = !detail::sign_violates(field, (word >> (n - 1 - i)) & 1u);
    }
    if (fixed) found.push_back(word);
  }

  EnumerationResult result{detail::make_fixed_point_set(n, std::move(found)), {}};
  result.stats.states_examined = total;
  result.stats.fixed_found = result.set.size();
  result.stats.wall_time = std::chrono::steady_clock::now() - start;
  result.stats.method = EnumerationMethod::Naive;
  result.stats.partitions = 1;
  return result;
}

/// Deterministic parallel enumerator: splits the Gray sequence [0, 2^n) into
/// contiguous blocks, scans each block independently (one fresh field seed
/// per block), and merges. The result is identical for every partition count
/// and any worker scheduling.
inline EnumerationResult enumerate_partitioned(const CirculantMatrix& matrix, int partitions,
                                               bool force_large = false) {
  const int n = matrix.size();
  detail::check_gray_cap(n, force_large);
  if (partitions < 1)
    raise(ErrorCode::InvalidArgument, "partitions must be >= 1, got " + std::to_string(partitions));
  const auto start = std::chrono::steady_clock::now();

  const std::vector<std::int32_t> cols = detail::column_table(matrix);
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t base = total / static_cast<std::uint64_t>(partitions);
  const std::uint64_t remainder = total % static_cast<std::uint64_t>(partitions);
  const auto block_begin = [&](int b) {
    const auto ub = static_cast<std::uint64_t>(b);
    return ub * base + std::min(ub, remainder);
  };

  std::vector<std::vector<std::uint64_t>> per_block(static_cast<std::size_t>(partitions));
  const auto scan_one = [&](int b) {
    detail::scan_gray_block(matrix.generator(), cols, block_begin(b), block_begin(b + 1),
                            per_block[static_cast<std::size_t>(b)]);
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(static_cast<unsigned>(partitions), hw));
  if (workers <= 1) {
    for (int b = 0; b < partitions; ++b) scan_one(b);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int b = next.fetch_add(1); b < partitions; b = next.fetch_add(1)) scan_one(b);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  std::vector<std::uint64_t> merged;
  for (const auto& block : per_block) merged.insert(merged.end(), block.begin(), block.end());

  EnumerationResult result{detail::make_fixed_point_set(n, std::move(merged)), {}};
  result.stats.states_examined = total;
  result.stats.fixed_found = result.set.size();
  result.stats.wall_time = std::chrono::steady_clock::now() - start;
  result.stats.method = EnumerationMethod::GrayCode;
  result.stats.partitions = partitions;
  return result;
}

/// Single-block Gray-code scan; O(n * 2^n) total.
inline EnumerationResult enumerate_gray(const CirculantMatrix& matrix, bool force_large = false) {
  return enumerate_partitioned(matrix, 1, force_large);
}

}  // namespace circmem
