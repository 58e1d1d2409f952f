// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsbench::optim {

namespace {

constexpr double kHuge = 1e300;

double guarded(const std::function<double(const std::vector<double>&)>& f,
               const std::vector<double>& x, int* evals) {
  ++*evals;
  const double v = f(x);
  return std::isfinite(v) ? v : kHuge;
}

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> fvals;

  void sort() {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    std::vector<std::vector<double>> p2(pts.size());
    std::vector<double> f2(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      p2[i] = std::move(pts[idx[i]]);
      f2[i] = fvals[idx[i]];
    }
    pts = std::move(p2);
    fvals = std::move(f2);
  }
};

// One Nelder-Mead run; the simplex is seeded around `center` with the given
// per-coordinate step.
void run_once(const std::function<double(const std::vector<double>&)>& f,
              const std::vector<double>& center, double step,
              const NelderMeadOptions& opt, NelderMeadResult* best) {
  const std::size_t dim = center.size();
  const int max_iter = opt.max_iter_per_dim * static_cast<int>(dim);

  Simplex s;
  s.pts.push_back(center);
  for (std::size_t i = 0; i < dim; ++i) {
    auto p = center;
    p[i] += step * (1.0 + std::abs(p[i]));
    s.pts.push_back(std::move(p));
  }
  for (const auto& p : s.pts) s.fvals.push_back(guarded(f, p, &best->evaluations));
  s.sort();

  constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    ++iter;
    const double spread = s.fvals.back() - s.fvals.front();
    if (spread <= opt.tol * (1.0 + std::abs(s.fvals.front()))) {
      converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i + 1 < s.pts.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.pts[i][j];
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto& worst = s.pts.back();
    std::vector<double> reflected(dim);
    for (std::size_t j = 0; j < dim; ++j)
      reflected[j] = centroid[j] + alpha * (centroid[j] - worst[j]);
    const double f_ref = guarded(f, reflected, &best->evaluations);

    if (f_ref < s.fvals.front()) {
      std::vector<double> expanded(dim);
      for (std::size_t j = 0; j < dim; ++j)
        expanded[j] = centroid[j] + gamma * (centroid[j] - worst[j]);
      const double f_exp = guarded(f, expanded, &best->evaluations);
      if (f_exp < f_ref) {
        s.pts.back() = std::move(expanded);
        s.fvals.back() = f_exp;
      } else {
        s.pts.back() = std::move(reflected);
        s.fvals.back() = f_ref;
      }
    } else if (f_ref < s.fvals[s.fvals.size() - 2]) {
      s.pts.back() = std::move(reflected);
      s.fvals.back() = f_ref;
    } else {
      std::vector<double> contracted(dim);
      const bool outside = f_ref < s.fvals.back();
      const auto& anchor = outside ? reflected : worst;
      for (std::size_t j = 0; j < dim; ++j)
        contracted[j] = centroid[j] + rho * (anchor[j] - centroid[j]);
      const double f_con = guarded(f, contracted, &best->evaluations);
      if (f_con < std::min(f_ref, s.fvals.back())) {
        s.pts.back() = std::move(contracted);
        s.fvals.back() = f_con;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 1; i < s.pts.size(); ++i) {
          for (std::size_t j = 0; j < dim; ++j)
            s.pts[i][j] = s.pts[0][j] + sigma * (s.pts[i][j] - s.pts[0][j]);
          s.fvals[i] = guarded(f, s.pts[i], &best->evaluations);
        }
      }
    }
    s.sort();
  }

  best->iterations += iter;
  if (s.fvals.front() < best->fx) {
    best->fx = s.fvals.front();
    best->x = s.pts.front();
  }
  best->converged = best->converged || converged;
}

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> x0, const NelderMeadOptions& options) {
  NelderMeadResult result;
  result.x = x0;
  result.fx = std::numeric_limits<double>::infinity();

  if (x0.empty()) {
    result.fx = guarded(objective, x0, &result.evaluations);
    result.converged = true;
    return result;
  }

  result.fx = guarded(objective, x0, &result.evaluations);
  run_once(objective, x0, options.initial_step, options, &result);
  for (int r = 0; r < options.restarts; ++r)
    run_once(objective, result.x, options.initial_step * 0.1, options, &result);
  return result;
}

}  // namespace tsbench::optim
