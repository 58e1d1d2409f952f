// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsbench/forecast.hpp"
#include "tsbench/series.hpp"

namespace tsbench::arima {

/// Exogenous regressors as columns; every column must have one entry per
/// series observation.
using ExogColumns = std::vector<std::vector<double>>;

struct ArimaOrder {
  int p = 0, d = 0, q = 0;  // non-seasonal AR / difference / MA
  int P = 0, D = 0, Q = 0;  // seasonal counterparts
  int m = 1;                // seasonal period

  int n_arma_coef() const { return p + q + P + Q; }
  bool has_seasonal_terms() const { return P > 0 || D > 0 || Q > 0; }
  /// Validates bounds and that n observations leave >= 20 usable rows.
  void validate(std::size_t n) const;
  std::string to_string() const;  // e.g. "(0,1,1)(0,0,1)[5]"
};

struct ArimaParams {
  std::vector<double> phi;    // p
  std::vector<double> theta;  // q
  std::vector<double> Phi;    // P
  std::vector<double> Theta;  // Q
  std::vector<double> beta;   // exogenous coefficients
  double intercept = 0.0;
  double sigma2 = 0.0;
};

struct FittedClassical {
  ArimaOrder order;
  ArimaParams params;
  double aic = 0.0;
  double sse = 0.0;
  int n_used = 0;
  std::vector<double> residuals;          // differenced scale, full length
  std::vector<double> adjusted_history;   // y - X*beta, original scale
  std::vector<double> diffed_history;     // difference(adjusted_history)
  bool stationarity_warning = false;      // AR roots on/inside the unit circle
  bool invertibility_warning = false;     // MA roots on/inside the unit circle
  bool converged = true;

  bool has_exog() const { return !params.beta.empty(); }
};

/// Conditional sum of squares: sum of e_t^2 with the multiplicative seasonal
/// polynomials expanded, pre-sample values and innovations set to zero, and
/// the first max(p, P*m) residuals excluded from the sum. When `exog` is
/// given, params.beta is applied to it and the regression-adjusted series is
/// modeled; `diffed` and the exog columns must already be on the differenced
/// scale.
double css_objective(const ArimaOrder& order, const ArimaParams& params,
                     const std::vector<double>& diffed,
                     const ExogColumns* exog = nullptr);

/// Fits by minimizing the CSS objective with Nelder-Mead from a
/// zero-coefficient start. The intercept is estimated only when d = D = 0
/// (a differenced model has no mean term, which keeps a (0,1,0) forecast
/// exactly flat). AIC is n*ln(sigma2) + 2(k+1) on the Gaussian CSS
/// likelihood, k = number of estimated coefficients.
FittedClassical fit(const Series& series, const ArimaOrder& order,
                    const ExogColumns* exog = nullptr);

/// Iterates the ARMA recursion with future innovations set to zero,
/// integrates the differences back, and adds the exogenous contribution.
/// `future_exog` is required iff the model has exogenous terms and must
/// have `horizon` rows per column.
Forecast forecast(const FittedClassical& model, int horizon,
                  const ExogColumns* future_exog = nullptr);

struct SeasonalGridSpec {
  std::vector<int> P_grid{0};
  std::vector<int> Q_grid{0};
  int D = 0;
  int m = 1;
};

/// Chooses d as the smallest value in {0,1,2} whose differenced series
/// passes the ADF test at 5%, fits every grid combination, and returns the
/// minimum-AIC fit. Ties break toward fewer parameters, then lexicographic
/// (p, q, P, Q). Cells whose fit throws are skipped; if every cell fails,
/// AllFitsFailedError is raised.
FittedClassical auto_order(const Series& series, const std::vector<int>& p_grid,
                           const std::vector<int>& q_grid,
                           const std::optional<SeasonalGridSpec>& seasonal = {},
                           const ExogColumns* exog = nullptr);

/// True when the polynomial 1 - c1*z - ... - ck*z^k (AR convention) has all
/// roots strictly outside the unit circle. For MA polynomials pass the
/// negated coefficients.
bool poly_roots_outside_unit_circle(const std::vector<double>& coef);

}  // namespace tsbench::arima
