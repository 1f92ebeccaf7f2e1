#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "circmem/core.hpp"
#include "circmem/enumerate.hpp"
#include "circmem/errors.hpp"

namespace circmem {

/// Right cyclic shift: result[i] = s[(i - k) mod n]. k may be any integer.
inline BipolarState rotate(const BipolarState& state, int k) {
  return BipolarState(state.size(), detail::rotate_packed(state.packed(), k, state.size()));
}

/// Flips every spin.
inline BipolarState complement(const BipolarState& state) {
  return BipolarState(state.size(), detail::complement_packed(state.packed(), state.size()));
}

namespace detail {

inline std::uint64_t canonical_rotation_packed(std::uint64_t bits, int n) {
  std::uint64_t best = bits;
  for (int k = 1; k < n; ++k) best = std::min(best, rotate_packed(bits, k, n));
  return best;
}

}  // namespace detail

/// The rotation of the state with minimum packed index; the representative of
/// its necklace.
inline BipolarState canonical_rotation(const BipolarState& state) {
  return BipolarState(state.size(),
                      detail::canonical_rotation_packed(state.packed(), state.size()));
}

enum class SymmetryGroup { RotationOnly, ComplementOnly, RotationAndComplement };

inline std::string_view to_string(SymmetryGroup group) {
  switch (group) {
    case SymmetryGroup::RotationOnly: return "RotationOnly";
    case SymmetryGroup::ComplementOnly: return "ComplementOnly";
    case SymmetryGroup::RotationAndComplement: return "RotationAndComplement";
  }
  return "Unknown";
}

/// Disjoint classes of an input set under the chosen group, restricted to the
/// set. Classes are sorted internally and ordered by their representative
/// (minimum packed member).
struct OrbitPartition {
  SymmetryGroup group = SymmetryGroup::RotationOnly;
  std::vector<std::vector<std::uint64_t>> classes;

  std::size_t size() const { return classes.size(); }
};

namespace detail {

// Union-find with path halving.
inline int uf_find(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    i = parent[static_cast<std::size_t>(i)];
  }
  return i;
}

inline void uf_union(std::vector<int>& parent, int a, int b) {
  a = uf_find(parent, a);
  b = uf_find(parent, b);
  if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
}

}  // namespace detail

inline OrbitPartition group_orbits(const FixedPointSet& set, SymmetryGroup group) {
  const int n = set.n;
  const auto& states = set.states;
  const int m = static_cast<int>(states.size());

  const auto index_of = [&](std::uint64_t packed) -> int {
    const auto it = std::lower_bound(states.begin(), states.end(), packed);
    if (it == states.end() || *it != packed) return -1;
    return static_cast<int>(it - states.begin());
  };

  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);

  const bool use_rotation =
      group == SymmetryGroup::RotationOnly || group == SymmetryGroup::RotationAndComplement;
  const bool use_complement =
      group == SymmetryGroup::ComplementOnly || group == SymmetryGroup::RotationAndComplement;

  for (int idx = 0; idx < m; ++idx) {
    const std::uint64_t s = states[static_cast<std::size_t>(idx)];
    if (use_rotation) {
      for (int k = 1; k < n; ++k) {
        const int other = index_of(detail::rotate_packed(s, k, n));
        if (other >= 0) detail::uf_union(parent, idx, other);
      }
    }
    if (use_complement) {
      const int other = index_of(detail::complement_packed(s, n));
      if (other >= 0) detail::uf_union(parent, idx, other);
    }
  }

  std::vector<std::vector<std::uint64_t>> classes;
  std::vector<int> class_of(static_cast<std::size_t>(m), -1);
  for (int idx = 0; idx < m; ++idx) {
    const int root = detail::uf_find(parent, idx);
    if (class_of[static_cast<std::size_t>(root)] < 0) {
      class_of[static_cast<std::size_t>(root)] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(class_of[static_cast<std::size_t>(root)])].push_back(
        states[static_cast<std::size_t>(idx)]);
  }
  // states were scanned in ascending order, so each class is already sorted
  // and classes are ordered by their minimum member.
  return OrbitPartition{group, std::move(classes)};
}

/// group_orbits over loose states; rejects mixed sizes.
inline OrbitPartition group_orbits(std::span<const BipolarState> states, SymmetryGroup group) {
  if (states.empty()) return OrbitPartition{group, {}};
  const int n = states.front().size();
  std::vector<std::uint64_t> packed;
  packed.reserve(states.size());
  for (const auto& s : states) {
    if (s.size() != n)
      raise(ErrorCode::MixedSizes, "states of size " + std::to_string(s.size()) + " and " +
                                       std::to_string(n) + " in one orbit computation");
    packed.push_back(s.packed());
  }
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
  return group_orbits(FixedPointSet{n, std::move(packed)}, group);
}

/// Number of classes under s ~ complement(s): the set size minus the number
/// of complement pairs fully contained in the set.
inline std::uint64_t unique_memory_count(const FixedPointSet& set) {
  std::uint64_t pairs = 0;
  for (std::uint64_t s : set.states) {
    const std::uint64_t c = detail::complement_packed(s, set.n);
    if (c > s && set.contains(c)) ++pairs;
  }
  return set.size() - pairs;
}

}  // namespace circmem
