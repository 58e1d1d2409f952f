// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

namespace tsbench {

/// A horizon-length forecast. Point path always present; sample paths and
/// quantile paths only for probabilistic models. Quantile paths are monotone
/// in the quantile level at every step by construction.
struct Forecast {
  std::vector<double> point;
  std::vector<std::vector<double>> samples;       // [sample][step], may be empty
  std::map<double, std::vector<double>> quantiles;  // level -> path, may be empty

  int horizon() const { return static_cast<int>(point.size()); }
};

/// Computes per-step empirical quantiles (linear interpolation between order
/// statistics) from forecast.samples and stores them at the given levels.
inline void attach_quantiles(Forecast& forecast,
                             const std::vector<double>& levels) {
  if (forecast.samples.empty()) return;
  const std::size_t n_steps = forecast.samples.front().size();
  const std::size_t n_samples = forecast.samples.size();
  std::vector<double> column(n_samples);
  for (double level : levels) forecast.quantiles[level].assign(n_steps, 0.0);
  for (std::size_t t = 0; t < n_steps; ++t) {
    for (std::size_t s = 0; s < n_samples; ++s)
      column[s] = forecast.samples[s][t];
    std::sort(column.begin(), column.end());
    for (double level : levels) {
      const double rank = level * static_cast<double>(n_samples - 1);
      const auto lo = static_cast<std::size_t>(rank);
      const std::size_t hi = std::min(lo + 1, n_samples - 1);
      const double frac = rank - static_cast<double>(lo);
      forecast.quantiles[level][t] = column[lo] * (1.0 - frac) + column[hi] * frac;
    }
  }
}

}  // namespace tsbench
