#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circmem/errors.hpp"

namespace circmem {

/// Network sizes are capped so a full state packs into one uint64_t.
inline constexpr int kMaxNetworkSize = 62;

/// Weight magnitude bound. With |c[k]| <= 2^20 and n <= 62, every local field
/// satisfies |f| <= 62 * 2^20, so 64-bit accumulation is exact.
inline constexpr std::int32_t kWeightLimit = 1 << 20;

/// First row of a circulant weight matrix. c[0] is the self-coupling and must
/// be zero; the remaining entries are free integers within the weight bound.
class GeneratorRow {
 public:
  explicit GeneratorRow(std::vector<std::int32_t> weights) : c_(std::move(weights)) {
    if (c_.empty()) raise(ErrorCode::EmptyRow, "generator row must have at least one entry");
    if (static_cast<int>(c_.size()) > kMaxNetworkSize)
      raise(ErrorCode::SizeTooLarge,
            "network size " + std::to_string(c_.size()) + " exceeds the packed-state limit " +
                std::to_string(kMaxNetworkSize));
    if (c_[0] != 0)
      raise(ErrorCode::NonZeroDiagonal,
            "self-coupling c[0] must be 0, got " + std::to_string(c_[0]));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] > kWeightLimit || c_[k] < -kWeightLimit)
        raise(ErrorCode::WeightOutOfRange,
              "weight c[" + std::to_string(k) + "]=" + std::to_string(c_[k]) +
                  " exceeds the bound " + std::to_string(kWeightLimit));
    }
  }

  int size() const { return static_cast<int>(c_.size()); }
  std::int32_t weight(int k) const { return c_[static_cast<std::size_t>(k)]; }
  std::span<const std::int32_t> weights() const { return c_; }

  /// Sum of the row; by circulant structure this is also every row sum of W.
  std::int64_t sum() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }

  bool operator==(const GeneratorRow&) const = default;

 private:
  std::vector<std::int32_t> c_;
};

inline std::int64_t row_sum(const GeneratorRow& row) { return row.sum(); }

/// n x n integer weight matrix with entry(i, j) = c[(j - i) mod n]. Only the
/// generator row is stored; the dense view is derived on demand.
class CirculantMatrix {
 public:
  explicit CirculantMatrix(GeneratorRow row) : row_(std::move(row)) {}

  int size() const { return row_.size(); }
  const GeneratorRow& generator() const { return row_; }

  std::int32_t entry(int i, int j) const {
    const int n = row_.size();
    return row_.weight(((j - i) % n + n) % n);
  }

  std::vector<std::vector<std::int32_t>> dense() const {
    const int n = row_.size();
    std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry(i, j);
    }
    return out;
  }

  bool operator==(const CirculantMatrix&) const = default;

 private:
  GeneratorRow row_;
};

inline CirculantMatrix build_circulant(GeneratorRow row) { return CirculantMatrix(std::move(row)); }

inline CirculantMatrix build_circulant(std::vector<std::int32_t> first_row) {
  return CirculantMatrix(GeneratorRow(std::move(first_row)));
}

namespace detail {

/// Right cyclic shift by k of an n-bit pattern whose position 0 is the most
/// significant bit. rotate_packed(bits, 1, n) moves every position one step
/// to the right with wraparound.
inline std::uint64_t rotate_packed(std::uint64_t bits, int k, int n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return bits;
  const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return ((bits >> k) | (bits << (n - k))) & mask;
}

inline std::uint64_t complement_packed(std::uint64_t bits, int n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return bits ^ mask;
}

}  // namespace detail

/// A state of n bipolar neurons. Packed form: bit (n-1-i) of `packed` is 0
/// when spin i is +1 and 1 when it is -1, i.e. position 0 is the most
/// significant bit and all-plus packs to 0. States of equal size are totally
/// ordered by their packed index.
class BipolarState {
 public:
  BipolarState(int n, std::uint64_t packed) : n_(n), bits_(packed) {
    if (n < 1 || n > kMaxNetworkSize)
      raise(ErrorCode::InvalidArgument, "state size must be in [1, " +
                                            std::to_string(kMaxNetworkSize) + "], got " +
                                            std::to_string(n));
    if (n < 64 && (packed >> n) != 0)
      raise(ErrorCode::InvalidArgument, "packed index " + std::to_string(packed) +
                                            " out of range for n=" + std::to_string(n));
  }

  static BipolarState all_plus(int n) { return BipolarState(n, 0); }
  static BipolarState all_minus(int n) {
    return BipolarState(n, (std::uint64_t{1} << n) - 1);
  }

  static BipolarState from_spins(std::span<const int> spins) {
    const int n = static_cast<int>(spins.size());
    BipolarState s(n, 0);
    for (int i = 0; i < n; ++i) {
      if (spins[static_cast<std::size_t>(i)] == -1)
        s.bits_ |= std::uint64_t{1} << (n - 1 - i);
      else if (spins[static_cast<std::size_t>(i)] != 1)
        raise(ErrorCode::InvalidArgument, "spins must be +1 or -1");
    }
    return s;
  }

  /// Parses a pattern such as "++--"; position 0 is the leftmost character.
  static BipolarState parse(std::string_view pattern) {
    const int n = static_cast<int>(pattern.size());
    if (n < 1 || n > kMaxNetworkSize)
      raise(ErrorCode::ParseError,
            "state pattern length must be in [1, " + std::to_string(kMaxNetworkSize) + "]");
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i) {
      const char ch = pattern[static_cast<std::size_t>(i)];
      if (ch == '-')
        bits |= std::uint64_t{1} << (n - 1 - i);
      else if (ch != '+')
        raise(ErrorCode::ParseError,
              std::string("unexpected character '") + ch + "' at position " + std::to_string(i));
    }
    return BipolarState(n, bits);
  }

  int size() const { return n_; }
  std::uint64_t packed() const { return bits_; }

  int spin(int i) const { return ((bits_ >> (n_ - 1 - i)) & 1u) ? -1 : +1; }

  std::vector<int> spins() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = spin(i);
    return out;
  }

  std::string pattern() const {
    std::string out(static_cast<std::size_t>(n_), '+');
    for (int i = 0; i < n_; ++i)
      if (spin(i) < 0) out[static_cast<std::size_t>(i)] = '-';
    return out;
  }

  bool operator==(const BipolarState&) const = default;
  auto operator<=>(const BipolarState& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    return bits_ <=> other.bits_;
  }

 private:
  int n_;
  std::uint64_t bits_;
};

/// Exact integer field vector f = W * s.
using LocalFieldVector = std::vector<std::int64_t>;

namespace detail {

/// f[i] = sum_q entry(i, q) * spin(q), evaluated directly from the generator
/// row and a packed state.
inline void compute_fields(const GeneratorRow& row, std::uint64_t word, std::int64_t* out) {
  const int n = row.size();
  for (int i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (int q = 0; q < n; ++q) {
      const std::int64_t w = row.weight(((q - i) % n + n) % n);
      acc += ((word >> (n - 1 - q)) & 1u) ? -w : w;
    }
    out[i] = acc;
  }
}

/// Threshold-rule violation test: a spin disagrees with its field exactly
/// when the field is negative and the spin is +1, or vice versa. Zero fields
/// count as +1.
inline bool sign_violates(std::int64_t field, bool spin_is_minus) {
  return (field < 0) != spin_is_minus;
}

}  // namespace detail

inline LocalFieldVector local_field(const CirculantMatrix& matrix, const BipolarState& state) {
  if (matrix.size() != state.size())
    raise(ErrorCode::SizeMismatch, "matrix size " + std::to_string(matrix.size()) +
                                       " != state size " + std::to_string(state.size()));
  LocalFieldVector fields(static_cast<std::size_t>(matrix.size()));
  detail::compute_fields(matrix.generator(), state.packed(), fields.data());
  return fields;
}

}  // namespace circmem
