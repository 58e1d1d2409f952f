// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/arima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tsbench/adf.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/nelder_mead.hpp"

namespace tsbench::arima {

namespace {

// Expands a multiplicative pair of lag polynomials into flat per-lag
// coefficients: index k-1 holds the coefficient at lag k. For the AR side
// (1 - sum phi B)(1 - sum Phi B^m) the cross terms carry sign -1; for the MA
// side (1 + theta B)(1 + Theta B^m) they carry +1.
std::vector<double> expand_seasonal(const std::vector<double>& nonseasonal,
                                    const std::vector<double>& seasonal, int m,
                                    double cross_sign) {
  std::vector<double> out(nonseasonal.size() + seasonal.size() * static_cast<std::size_t>(m),
                          0.0);
  for (std::size_t i = 0; i < nonseasonal.size(); ++i) out[i] += nonseasonal[i];
  for (std::size_t j = 0; j < seasonal.size(); ++j) {
    const std::size_t base = (j + 1) * static_cast<std::size_t>(m);
    out[base - 1] += seasonal[j];
    for (std::size_t i = 0; i < nonseasonal.size(); ++i)
      out[base + i] += cross_sign * nonseasonal[i] * seasonal[j];
  }
  return out;
}

void check_dims(const ArimaOrder& order, const ArimaParams& params,
                const ExogColumns* exog) {
  auto want = [](const char* name, std::size_t got, std::size_t expect) {
    if (got != expect)
      throw DimensionMismatchError(std::string(name) + ": got " +
                                   std::to_string(got) + ", order wants " +
                                   std::to_string(expect));
  };
  want("phi", params.phi.size(), static_cast<std::size_t>(order.p));
  want("theta", params.theta.size(), static_cast<std::size_t>(order.q));
  want("Phi", params.Phi.size(), static_cast<std::size_t>(order.P));
  want("Theta", params.Theta.size(), static_cast<std::size_t>(order.Q));
  if (exog) want("beta", params.beta.size(), exog->size());
}

// Residual recursion shared by the objective, the stored fit and the
// forecaster. Returns all e_t; callers decide which range enters the SSE.
std::vector<double> css_residuals(const ArimaOrder& order,
                                  const ArimaParams& params,
                                  const std::vector<double>& z) {
  const auto ar = expand_seasonal(params.phi, params.Phi, order.m, -1.0);
  const auto ma = expand_seasonal(params.theta, params.Theta, order.m, 1.0);
  const std::size_t n = z.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double value = z[t] - params.intercept;
    for (std::size_t k = 1; k <= ar.size() && k <= t; ++k)
      value -= ar[k - 1] * z[t - k];
    for (std::size_t k = 1; k <= ma.size() && k <= t; ++k)
      value -= ma[k - 1] * e[t - k];
    e[t] = value;
  }
  return e;
}

std::vector<double> apply_exog(const std::vector<double>& y,
                               const ExogColumns& exog,
                               const std::vector<double>& beta) {
  std::vector<double> z = y;
  for (std::size_t c = 0; c < exog.size(); ++c) {
    if (exog[c].size() != y.size())
      throw DimensionMismatchError("exog column " + std::to_string(c) + " has " +
                                   std::to_string(exog[c].size()) + " rows, need " +
                                   std::to_string(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) z[i] -= beta[c] * exog[c][i];
  }
  return z;
}

std::size_t conditioning_count(const ArimaOrder& order) {
  return static_cast<std::size_t>(
      std::max(order.p, order.P * order.m));
}

struct ParamLayout {
  int p, q, P, Q;
  std::size_t n_exog;
  bool estimate_intercept;

  std::size_t dim() const {
    return static_cast<std::size_t>(p + q + P + Q) + n_exog +
           (estimate_intercept ? 1u : 0u);
  }
  ArimaParams unpack(const std::vector<double>& x) const {
    ArimaParams out;
    auto it = x.begin();
    out.phi.assign(it, it + p); it += p;
    out.theta.assign(it, it + q); it += q;
    out.Phi.assign(it, it + P); it += P;
    out.Theta.assign(it, it + Q); it += Q;
    out.beta.assign(it, it + static_cast<std::ptrdiff_t>(n_exog));
    it += static_cast<std::ptrdiff_t>(n_exog);
    out.intercept = estimate_intercept ? *it : 0.0;
    return out;
  }
};

}  // namespace

void ArimaOrder::validate(std::size_t n) const {
  if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0 || m < 1)
    throw InvalidArgumentError("arima order components must be non-negative, m >= 1");
  if (p > 5 || q > 5 || P > 5 || Q > 5)
    throw InvalidArgumentError("arima orders above 5 are not supported");
  if ((P > 0 || D > 0 || Q > 0) && m < 2)
    throw InvalidArgumentError("seasonal terms need a period m >= 2");
  const std::size_t drop = static_cast<std::size_t>(d) +
                           static_cast<std::size_t>(D) * static_cast<std::size_t>(m);
  if (n < drop + 20)
    throw SeriesTooShortError("order " + to_string() + " leaves fewer than 20 usable observations");
}

std::string ArimaOrder::to_string() const {
  std::ostringstream os;
  os << "(" << p << "," << d << "," << q << ")";
  if (has_seasonal_terms()) os << "(" << P << "," << D << "," << Q << ")[" << m << "]";
  return os.str();
}

bool poly_roots_outside_unit_circle(const std::vector<double>& coef) {
  // Schur-Cohn on the reversed characteristic polynomial
  // z^k - c1 z^{k-1} - ... - ck; all roots of the original outside the unit
  // circle iff all roots of this one are strictly inside.
  std::vector<double> a;
  a.reserve(coef.size() + 1);
  a.push_back(1.0);
  for (double c : coef) a.push_back(-c);
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  while (a.size() > 1) {
    const std::size_t n = a.size() - 1;
    if (std::abs(a[n]) >= std::abs(a[0])) return false;
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = a[0] * a[i] - a[n] * a[n - i];
    a = std::move(b);
    while (!a.empty() && a.back() == 0.0) a.pop_back();
  }
  return true;
}

double css_objective(const ArimaOrder& order, const ArimaParams& params,
                     const std::vector<double>& diffed, const ExogColumns* exog) {
  check_dims(order, params, exog);
  std::vector<double> z =
      exog ? apply_exog(diffed, *exog, params.beta) : diffed;
  const auto e = css_residuals(order, params, z);
  const std::size_t ncond = conditioning_count(order);
  double sse = 0.0;
  for (std::size_t t = ncond; t < e.size(); ++t) sse += e[t] * e[t];
  return sse;
}

FittedClassical fit(const Series& series, const ArimaOrder& order,
                    const ExogColumns* exog) {
  order.validate(series.size());
  const std::vector<double> diffed =
      difference(series.values, order.d, order.D, order.m);

  ExogColumns exog_diffed;
  if (exog) {
    for (const auto& col : *exog) {
      if (col.size() != series.size())
        throw DimensionMismatchError("exog column rows != series length");
      exog_diffed.push_back(difference(col, order.d, order.D, order.m));
    }
  }
  const ExogColumns* exog_ptr = exog ? &exog_diffed : nullptr;

  ParamLayout layout{order.p, order.q, order.P, order.Q,
                     exog ? exog->size() : 0u,
                     order.d == 0 && order.D == 0};

  std::vector<double> x0(layout.dim(), 0.0);
  if (layout.estimate_intercept) {
    double mean = 0.0;
    for (double v : diffed) mean += v;
    x0.back() = mean / static_cast<double>(diffed.size());
  }

  auto objective = [&](const std::vector<double>& x) {
    return css_objective(order, layout.unpack(x), diffed, exog_ptr);
  };

  optim::NelderMeadOptions opts;
  const auto result = optim::nelder_mead(objective, x0, opts);
  if (!std::isfinite(result.fx) || result.fx >= 1e299)
    throw OptimizerDivergedError("css optimization diverged for order " +
                                 order.to_string());

  FittedClassical out;
  out.order = order;
  out.params = layout.unpack(result.x);
  out.converged = result.converged;

  const std::vector<double> z =
      exog_ptr ? apply_exog(diffed, *exog_ptr, out.params.beta) : diffed;
  out.residuals = css_residuals(order, out.params, z);
  const std::size_t ncond = conditioning_count(order);
  if (out.residuals.size() <= ncond)
    throw SeriesTooShortError("order " + order.to_string() +
                              " conditions away every observation");
  out.sse = 0.0;
  for (std::size_t t = ncond; t < out.residuals.size(); ++t)
    out.sse += out.residuals[t] * out.residuals[t];
  out.n_used = static_cast<int>(out.residuals.size() - ncond);
  out.params.sigma2 =
      std::max(out.sse / static_cast<double>(out.n_used), 1e-300);
  const double k = static_cast<double>(layout.dim());
  out.aic = static_cast<double>(out.n_used) * std::log(out.params.sigma2) +
            2.0 * (k + 1.0);

  out.stationarity_warning = !poly_roots_outside_unit_circle(out.params.phi) ||
                             !poly_roots_outside_unit_circle(out.params.Phi);
  auto negate = [](std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
  };
  out.invertibility_warning =
      !poly_roots_outside_unit_circle(negate(out.params.theta)) ||
      !poly_roots_outside_unit_circle(negate(out.params.Theta));

  out.adjusted_history =
      exog ? apply_exog(series.values, *exog, out.params.beta) : series.values;
  out.diffed_history = z;
  return out;
}

Forecast forecast(const FittedClassical& model, int horizon,
                  const ExogColumns* future_exog) {
  if (horizon < 1) throw InvalidArgumentError("horizon must be >= 1");
  if (model.has_exog()) {
    if (!future_exog)
      throw MissingExogError("model has exogenous terms; future_exog required");
    if (future_exog->size() != model.params.beta.size())
      throw MissingExogError("future_exog has " + std::to_string(future_exog->size()) +
                             " columns, model has " +
                             std::to_string(model.params.beta.size()));
    for (const auto& col : *future_exog)
      if (col.size() != static_cast<std::size_t>(horizon))
        throw MissingExogError("future_exog columns must have horizon rows");
  } else if (future_exog && !future_exog->empty()) {
    throw MissingExogError("model has no exogenous terms but future_exog given");
  }

  const auto& order = model.order;
  const auto ar = expand_seasonal(model.params.phi, model.params.Phi, order.m, -1.0);
  const auto ma = expand_seasonal(model.params.theta, model.params.Theta, order.m, 1.0);
  const auto& z = model.diffed_history;
  const auto& e = model.residuals;
  const std::size_t n = z.size();

  std::vector<double> zf;
  zf.reserve(static_cast<std::size_t>(horizon));
  for (int j = 0; j < horizon; ++j) {
    double pred = model.params.intercept;
    for (std::size_t k = 1; k <= ar.size(); ++k) {
      const std::ptrdiff_t idx =
          static_cast<std::ptrdiff_t>(n) + j - static_cast<std::ptrdiff_t>(k);
      double value = 0.0;
      if (idx >= static_cast<std::ptrdiff_t>(n))
        value = zf[static_cast<std::size_t>(idx) - n];
      else if (idx >= 0)
        value = z[static_cast<std::size_t>(idx)];
      pred += ar[k - 1] * value;
    }
    for (std::size_t k = 1; k <= ma.size(); ++k) {
      const std::ptrdiff_t idx =
          static_cast<std::ptrdiff_t>(n) + j - static_cast<std::ptrdiff_t>(k);
      if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(n))
        pred += ma[k - 1] * e[static_cast<std::size_t>(idx)];
    }
    zf.push_back(pred);
  }

  std::vector<double> path = integrate_forecast(model.adjusted_history, zf,
                                                order.d, order.D, order.m);
  if (model.has_exog()) {
    for (std::size_t c = 0; c < future_exog->size(); ++c)
      for (int j = 0; j < horizon; ++j)
        path[static_cast<std::size_t>(j)] +=
            model.params.beta[c] * (*future_exog)[c][static_cast<std::size_t>(j)];
  }

  Forecast out;
  out.point = std::move(path);
  return out;
}

FittedClassical auto_order(const Series& series, const std::vector<int>& p_grid,
                           const std::vector<int>& q_grid,
                           const std::optional<SeasonalGridSpec>& seasonal,
                           const ExogColumns* exog) {
  if (p_grid.empty() || q_grid.empty())
    throw InvalidArgumentError("auto_order: grids must be non-empty");

  // d: smallest differencing order in {0,1,2} that leaves a stationary
  // series at the 5% ADF level. A constant differenced series (singular
  // regression) counts as stationary.
  int d = 2;
  for (int cand = 0; cand <= 2; ++cand) {
    const Series view = cand == 0 ? series : difference(series, cand, 0, 1);
    bool stationary;
    try {
      stationary = adf_test(view).is_stationary;
    } catch (const SingularRegressionError&) {
      stationary = true;
    }
    if (stationary) {
      d = cand;
      break;
    }
  }

  std::vector<int> p_sorted = p_grid, q_sorted = q_grid;
  std::sort(p_sorted.begin(), p_sorted.end());
  std::sort(q_sorted.begin(), q_sorted.end());
  std::vector<int> P_sorted{0}, Q_sorted{0};
  int D = 0, m = 1;
  if (seasonal) {
    P_sorted = seasonal->P_grid;
    Q_sorted = seasonal->Q_grid;
    std::sort(P_sorted.begin(), P_sorted.end());
    std::sort(Q_sorted.begin(), Q_sorted.end());
    D = seasonal->D;
    m = seasonal->m;
    if (P_sorted.empty() || Q_sorted.empty())
      throw InvalidArgumentError("auto_order: seasonal grids must be non-empty");
  }

  // Near-tie parsimony: models within kAicTieWindow of the minimum AIC are
  // treated as equivalent and the one with the fewest ARMA coefficients wins
  // (then the lexicographically first, which is the grid iteration order).
  // Candidates whose fitted polynomials violate stationarity or
  // invertibility are excluded from the search unless nothing else survived.
  constexpr double kAicTieWindow = 2.0;

  std::vector<FittedClassical> clean, flagged;
  std::string first_error;
  for (int p : p_sorted)
    for (int q : q_sorted)
      for (int P : P_sorted)
        for (int Q : Q_sorted) {
          ArimaOrder order{p, d, q, P, D, Q, m};
          try {
            FittedClassical candidate = fit(series, order, exog);
            if (candidate.stationarity_warning || candidate.invertibility_warning)
              flagged.push_back(std::move(candidate));
            else
              clean.push_back(std::move(candidate));
          } catch (const Error& err) {
            if (first_error.empty()) first_error = err.what();
          }
        }
  std::vector<FittedClassical>& candidates = clean.empty() ? flagged : clean;
  if (candidates.empty())
    throw AllFitsFailedError("auto_order: every grid cell failed (first: " +
                             first_error + ")");

  double min_aic = candidates.front().aic;
  for (const auto& c : candidates) min_aic = std::min(min_aic, c.aic);
  std::size_t best = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].aic > min_aic + kAicTieWindow) continue;
    if (best == candidates.size() ||
        candidates[i].order.n_arma_coef() <
            candidates[best].order.n_arma_coef())
      best = i;
  }
  return std::move(candidates[best]);
}

}  // namespace tsbench::arima
