// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace tsbench::metrics {

/// Observed (target) and forecast (output) vectors of equal length.
struct AlignedPair {
  std::vector<double> target;
  std::vector<double> output;
};

/// Denominator convention for MAPE. Output is nonstandard but matches the
/// way this suite defines the percentage error; Target is the textbook
/// convention. Both are supported.
enum class MapeDenominator { Output, Target };

struct MetricReport {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double mape = 0.0;      // percent
  double pocid = 0.0;     // percent of correctly predicted directions
  double theils_u = 0.0;  // squared error over squared successive output steps
};

double mse(const AlignedPair& pair);
double rmse(const AlignedPair& pair);
double mae(const AlignedPair& pair);

/// (100/N) * sum |target_i - output_i| / |denom_i|. Throws
/// ZeroDenominatorError naming the first offending index.
double mape(const AlignedPair& pair,
            MapeDenominator denominator = MapeDenominator::Output);

/// 100 * (#adjacent steps where target and output move the same way) / (N-1).
/// A zero change in either vector counts as incorrect.
double pocid(const AlignedPair& pair);

/// sum_{t=2..N} (target_t - output_t)^2 / sum_{t=2..N} (output_t - output_{t-1})^2.
/// Throws ConstantOutputError when the denominator is zero.
double theils_u(const AlignedPair& pair);

/// Runs all six metrics, failing fast on the first per-metric error.
MetricReport evaluate_all(const AlignedPair& pair,
                          MapeDenominator denominator = MapeDenominator::Output);

}  // namespace tsbench::metrics
