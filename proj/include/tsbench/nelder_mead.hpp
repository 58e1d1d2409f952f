// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace tsbench::optim {

struct NelderMeadOptions {
  double tol = 1e-8;          // stop when the simplex objective spread closes
  int max_iter_per_dim = 2000;
  double initial_step = 0.1;  // edge length of the starting simplex
  int restarts = 1;           // rebuilds from the best vertex after converging
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization. Non-finite objective values are
/// treated as very large, so the simplex backs away from them. A
/// zero-dimensional input just evaluates the objective once.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace tsbench::optim
