#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "circmem/core.hpp"
#include "circmem/errors.hpp"

namespace circmem {

/// Threshold neuron output: +1 when the weighted input sum is >= 0, else -1.
/// The tie case (zero field) maps to +1; this is load-bearing for the fixed
/// point structure of zero-row-sum matrices.
inline int threshold(std::int64_t field_component) { return field_component >= 0 ? +1 : -1; }

/// One synchronous step: every neuron thresholds its field computed from the
/// old state.
inline BipolarState sync_update(const CirculantMatrix& matrix, const BipolarState& state) {
  const LocalFieldVector fields = local_field(matrix, state);
  const int n = state.size();
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i)
    if (fields[static_cast<std::size_t>(i)] < 0) bits |= std::uint64_t{1} << (n - 1 - i);
  return BipolarState(n, bits);
}

namespace detail {

inline void check_permutation(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n)
    raise(ErrorCode::InvalidPermutation,
          "order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      raise(ErrorCode::InvalidPermutation, "order is not a permutation of 0.." + std::to_string(n - 1));
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace detail

/// One asynchronous sweep: neurons update one at a time in the given order,
/// each seeing every earlier in-sweep update.
inline BipolarState async_sweep(const CirculantMatrix& matrix, const BipolarState& state,
                                std::span<const int> order) {
  if (matrix.size() != state.size())
    raise(ErrorCode::SizeMismatch, "matrix size " + std::to_string(matrix.size()) +
                                       " != state size " + std::to_string(state.size()));
  const int n = state.size();
  detail::check_permutation(order, n);
  std::vector<int> spins = state.spins();
  for (int i : order) {
    std::int64_t field = 0;
    for (int j = 0; j < n; ++j)
      field += static_cast<std::int64_t>(matrix.entry(i, j)) * spins[static_cast<std::size_t>(j)];
    spins[static_cast<std::size_t>(i)] = threshold(field);
  }
  return BipolarState::from_spins(spins);
}

/// A memory: a state every neuron maps to itself. Equivalent to
/// sync_update(matrix, state) == state, and order-independent for sweeps.
inline bool is_fixed_point(const CirculantMatrix& matrix, const BipolarState& state) {
  const LocalFieldVector fields = local_field(matrix, state);
  for (int i = 0; i < state.size(); ++i)
    if (detail::sign_violates(fields[static_cast<std::size_t>(i)], state.spin(i) < 0)) return false;
  return true;
}

struct UpdateMode {
  enum class Kind { Synchronous, AsynchronousSweep };

  Kind kind = Kind::Synchronous;
  std::vector<int> order;  // sweep order; used only for AsynchronousSweep

  static UpdateMode synchronous() { return {}; }
  static UpdateMode asynchronous(std::vector<int> sweep_order) {
    return {Kind::AsynchronousSweep, std::move(sweep_order)};
  }
};

struct TrajectoryOutcome {
  enum class Kind { FixedPoint, Cycle, MaxItersExceeded };

  Kind kind;
  BipolarState state;   // the fixed point, the first state of the cycle, or the last state seen
  int steps = 0;        // steps taken to reach the fixed point / to enter the cycle
  int period = 0;       // cycle period; 0 unless kind == Cycle
};

/// Iterates the chosen update from `start` until a state repeats. A period-1
/// repeat is a fixed point; longer repeats report the exact cycle. Detection
/// keeps the full history of visited packed states, so reported periods and
/// entry steps are exact.
inline TrajectoryOutcome converge(const CirculantMatrix& matrix, const BipolarState& start,
                                  const UpdateMode& mode, int max_iters) {
  if (max_iters < 1)
    raise(ErrorCode::InvalidArgument, "max_iters must be >= 1, got " + std::to_string(max_iters));
  if (matrix.size() != start.size())
    raise(ErrorCode::SizeMismatch, "matrix size " + std::to_string(matrix.size()) +
                                       " != state size " + std::to_string(start.size()));
  if (mode.kind == UpdateMode::Kind::AsynchronousSweep)
    detail::check_permutation(mode.order, matrix.size());

  std::unordered_map<std::uint64_t, int> first_seen;
  std::vector<std::uint64_t> visited;
  first_seen.emplace(start.packed(), 0);
  visited.push_back(start.packed());

  BipolarState current = start;
  for (int step = 1; step <= max_iters; ++step) {
    const BipolarState next = (mode.kind == UpdateMode::Kind::Synchronous)
                                  ? sync_update(matrix, current)
                                  : async_sweep(matrix, current, mode.order);
    const auto it = first_seen.find(next.packed());
    if (it != first_seen.end()) {
      const int entered = it->second;
      const int period = step - entered;
      if (period == 1) return {TrajectoryOutcome::Kind::FixedPoint, next, entered, 0};
      return {TrajectoryOutcome::Kind::Cycle, BipolarState(start.size(), visited[static_cast<std::size_t>(entered)]),
              entered, period};
    }
    first_seen.emplace(next.packed(), step);
    visited.push_back(next.packed());
    current = next;
  }
  return {TrajectoryOutcome::Kind::MaxItersExceeded, current, max_iters, 0};
}

}  // namespace circmem
