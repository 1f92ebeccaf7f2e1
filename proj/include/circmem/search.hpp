#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "circmem/capacity.hpp"
#include "circmem/core.hpp"
#include "circmem/errors.hpp"
#include "circmem/prng.hpp"

namespace circmem {

struct SearchConfig {
  int n = 4;
  std::uint64_t trials = 0;
  std::int32_t weight_min = -9;
  std::int32_t weight_max = 9;
  std::optional<std::int64_t> row_sum_target;
  std::uint64_t seed = 0;
  std::uint64_t max_rejections_per_trial = 1000;
};

struct SearchReport {
  SearchConfig config;
  std::uint64_t accepted = 0;
  std::uint64_t exhausted_trials = 0;          // trials whose rejection budget ran out
  std::map<std::uint64_t, std::uint64_t> histogram;  // fixed_count -> number of matrices
  double mean_fixed = 0.0;
  std::uint64_t max_fixed = 0;
  std::optional<GeneratorRow> best_row;        // first matrix reaching max_fixed
  std::uint64_t best_trial = 0;
};

namespace detail {

inline std::optional<GeneratorRow> draw_row(std::mt19937_64& gen, const SearchConfig& config) {
  const std::uint64_t attempts = config.max_rejections_per_trial + 1;
  for (std::uint64_t attempt = 0; attempt < attempts; ++attempt) {
    std::vector<std::int32_t> weights(static_cast<std::size_t>(config.n), 0);
    std::int64_t sum = 0;
    for (int k = 1; k < config.n; ++k) {
      const auto w = static_cast<std::int32_t>(
          rng::uniform_int(gen, config.weight_min, config.weight_max));
      weights[static_cast<std::size_t>(k)] = w;
      sum += w;
    }
    if (!config.row_sum_target || sum == *config.row_sum_target)
      return GeneratorRow(std::move(weights));
  }
  return std::nullopt;
}

}  // namespace detail

/// Seeded random exploration of generator rows. Draws are sequential from one
/// mt19937_64 stream, so a config (seed included) reproduces its report
/// exactly. Trials whose rejection budget exhausts produce no matrix; if
/// every trial exhausts, the row-sum constraint is deemed unsatisfiable.
inline SearchReport random_search(const SearchConfig& config) {
  if (config.n < 1 || config.n > kMaxNetworkSize)
    raise(ErrorCode::InvalidArgument, "search size must be in [1, " +
                                          std::to_string(kMaxNetworkSize) + "]");
  if (config.weight_min > config.weight_max)
    raise(ErrorCode::InvalidArgument, "weight_min exceeds weight_max");
  if (config.weight_min < -kWeightLimit || config.weight_max > kWeightLimit)
    raise(ErrorCode::WeightOutOfRange, "weight interval exceeds the bound " +
                                           std::to_string(kWeightLimit));
  if (config.max_rejections_per_trial < 1)
    raise(ErrorCode::InvalidArgument, "max_rejections_per_trial must be >= 1");

  SearchReport report;
  report.config = config;
  std::mt19937_64 gen(config.seed);
  std::uint64_t fixed_total = 0;

  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const std::optional<GeneratorRow> row = detail::draw_row(gen, config);
    if (!row) {
      ++report.exhausted_trials;
      continue;
    }
    const EnumerationResult result = enumerate_gray(CirculantMatrix(*row));
    const std::uint64_t fixed = result.set.size();
    ++report.histogram[fixed];
    fixed_total += fixed;
    ++report.accepted;
    if (!report.best_row || fixed > report.max_fixed) {
      report.max_fixed = fixed;
      report.best_row = *row;
      report.best_trial = trial;
    }
  }

  if (config.trials > 0 && report.accepted == 0)
    raise(ErrorCode::RowSumUnsatisfiable,
          "no draw hit row sum " +
              (config.row_sum_target ? std::to_string(*config.row_sum_target) : std::string("?")) +
              " within " + std::to_string(config.max_rejections_per_trial) +
              " rejections on any of " + std::to_string(config.trials) + " trials");

  if (report.accepted > 0)
    report.mean_fixed = static_cast<double>(fixed_total) / static_cast<double>(report.accepted);
  return report;
}

}  // namespace circmem
