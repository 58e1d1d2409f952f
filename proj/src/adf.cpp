// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/adf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

struct OlsFit {
  std::vector<double> coef;
  std::vector<double> se;
  double sse = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares via normal equations; regressors are few here so
// Gauss-Jordan with partial pivoting is plenty.
OlsFit ols(const std::vector<std::vector<double>>& columns,
           const std::vector<double>& y) {
  const std::size_t k = columns.size();
  const std::size_t n = y.size();
  std::vector<double> xtx(k * k, 0.0), xty(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += columns[a][i] * columns[b][i];
      xtx[a * k + b] = s;
      xtx[b * k + a] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += columns[a][i] * y[i];
    xty[a] = s;
  }

  // invert xtx in place (augmented Gauss-Jordan)
  std::vector<double> inv(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;
  std::vector<double> a = xtx;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw SingularRegressionError("all-zero design matrix");
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
    if (std::abs(a[pivot * k + col]) < 1e-12 * scale)
      throw SingularRegressionError("singular regression (collinear or constant input)");
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) {
        std::swap(a[pivot * k + c], a[col * k + c]);
        std::swap(inv[pivot * k + c], inv[col * k + c]);
      }
    }
    const double d = a[col * k + col];
    for (std::size_t c = 0; c < k; ++c) {
      a[col * k + c] /= d;
      inv[col * k + c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        a[r * k + c] -= f * a[col * k + c];
        inv[r * k + c] -= f * inv[col * k + c];
      }
    }
  }

  OlsFit fit;
  fit.n = n;
  fit.coef.resize(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += inv[i * k + j] * xty[j];
    fit.coef[i] = s;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < k; ++j) pred += fit.coef[j] * columns[j][i];
    const double r = y[i] - pred;
    fit.sse += r * r;
  }
  const double dof = static_cast<double>(n) - static_cast<double>(k);
  const double sigma2 = fit.sse / std::max(dof, 1.0);
  fit.se.resize(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    fit.se[i] = std::sqrt(std::max(sigma2 * inv[i * k + i], 0.0));
  return fit;
}

// Builds the ADF design for lag k over rows t = start..n_dy-1 (0-based over
// the differenced sequence) and fits it. Column 1 is the lagged level.
OlsFit fit_adf(const std::vector<double>& y, const std::vector<double>& dy,
               int k, std::size_t start) {
  const std::size_t n_rows = dy.size() - start;
  std::vector<std::vector<double>> cols;
  cols.emplace_back(n_rows, 1.0);  // intercept
  std::vector<double> level(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) level[i] = y[start + i];
  cols.push_back(std::move(level));
  for (int lag = 1; lag <= k; ++lag) {
    std::vector<double> c(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i)
      c[i] = dy[start + i - static_cast<std::size_t>(lag)];
    cols.push_back(std::move(c));
  }
  std::vector<double> target(dy.begin() + static_cast<std::ptrdiff_t>(start),
                             dy.end());
  return ols(cols, target);
}

}  // namespace

StationarityReport adf_test(const Series& series, int max_lag,
                            int rolling_window) {
  const std::size_t n = series.size();
  if (max_lag < 0) {
    max_lag = static_cast<int>(
        std::ceil(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    max_lag = std::min<int>(max_lag, static_cast<int>(n) - 12);
    max_lag = std::max(max_lag, 0);
  }
  if (n < static_cast<std::size_t>(max_lag) + 10)
    throw SeriesTooShortError("adf_test: need at least max_lag + 10 observations");

  const std::vector<double>& y = series.values;
  std::vector<double> dy(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) dy[i] = y[i + 1] - y[i];

  // Lag choice by AIC on the sample common to every candidate.
  const auto common_start = static_cast<std::size_t>(max_lag);
  int best_k = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= max_lag; ++k) {
    OlsFit f = fit_adf(y, dy, k, common_start);
    const auto nn = static_cast<double>(f.n);
    const double aic = nn * std::log(std::max(f.sse / nn, 1e-300)) +
                       2.0 * static_cast<double>(k + 2);
    if (aic < best_aic) {
      best_aic = aic;
      best_k = k;
    }
  }

  // Refit the chosen lag on its full usable sample.
  OlsFit fit = fit_adf(y, dy, best_k, static_cast<std::size_t>(best_k));
  const double gamma = fit.coef[1];
  const double se = fit.se[1];
  if (!(se > 0.0))
    throw SingularRegressionError("adf_test: zero standard error on the level term");

  StationarityReport report;
  report.adf_statistic = gamma / se;
  report.lag_order = best_k;
  report.critical_values = {{0.01, -3.43}, {0.05, -2.86}, {0.10, -2.57}};
  report.is_stationary = report.adf_statistic < report.critical_values.at(0.05);
  if (rolling_window >= 1 && n >= static_cast<std::size_t>(rolling_window)) {
    auto [mean, sd] = rolling_stats(series, rolling_window);
    report.rolling_mean = std::move(mean);
    report.rolling_std = std::move(sd);
  }
  return report;
}

}  // namespace tsbench
