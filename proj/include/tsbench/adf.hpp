// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>

#include "tsbench/series.hpp"

namespace tsbench {

struct StationarityReport {
  double adf_statistic = 0.0;
  int lag_order = 0;                        // augmentation lags actually used
  std::map<double, double> critical_values; // significance level -> value
  bool is_stationary = false;               // statistic < 5% critical value
  Series rolling_mean;
  Series rolling_std;
};

/// Augmented Dickey-Fuller test with constant:
///   dy_t = alpha + gamma * y_{t-1} + sum_{i=1..k} beta_i * dy_{t-i} + e_t
/// fit by OLS. The lag k is chosen by minimum AIC over 0..max_lag on a
/// common sample, then refit on the full sample available for k. The
/// statistic is gamma_hat / se(gamma_hat), compared against the asymptotic
/// constant-only critical values (-3.43 / -2.86 / -2.57 at 1/5/10%).
///
/// max_lag < 0 selects the Schwert rule 12 * (N/100)^0.25, clamped so the
/// regression keeps at least 10 rows. Throws SingularRegressionError on
/// collinear (e.g. constant) input.
StationarityReport adf_test(const Series& series, int max_lag = -1,
                            int rolling_window = 10);

}  // namespace tsbench
