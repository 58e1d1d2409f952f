// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tsbench/cells.hpp"
#include "tsbench/forecast.hpp"
#include "tsbench/series.hpp"
#include "tsbench/train.hpp"

namespace tsbench::nn {

struct DeepArConfig {
  int num_layers = 3;
  int hidden = 40;
  bool scaling = true;
  double learning_rate = 0.001;
  enum class Likelihood { Gaussian, StudentT } likelihood = Likelihood::Gaussian;
  int num_samples = 200;
  double student_t_dof = 5.0;  // fixed degrees of freedom for StudentT

  void validate() const;
};

/// LSTM stack with a Gaussian (or Student-t) head. Inputs per step are the
/// previous mean-scaled value plus a pseudo day-of-week one-hot derived from
/// the series position (positions advance one business day at a time).
struct FittedDeepAr {
  DeepArConfig config;
  CellStack stack;
  Parameter mu_w, mu_b;
  Parameter sigma_w, sigma_b;  // softplus(pre) + 1e-6
  int context_len = 5;
  int window_len = 10;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;

  std::vector<Parameter*> parameters();
  void save(std::ostream& os) const;
  static FittedDeepAr load(std::istream& is);
};

/// Mean scale nu = 1 + mean(context) when scaling is enabled (1 otherwise),
/// guarded away from zero for sign-mixed series.
double deepar_scale_factor(const std::vector<double>& context, bool scaling);

inline constexpr double kSigmaFloor = 1e-6;
inline constexpr int kDayCycle = 5;  // pseudo-weekday cycle for features

/// Teacher-forced negative log-likelihood training; deterministic per seed.
FittedDeepAr deepar_train(const WindowSet& windows, const DeepArConfig& config,
                          const TrainConfig& train);

/// Warms the state on the context, then draws num_samples ancestral paths,
/// feeding each sampled value back in. Point path is the per-step median;
/// quantiles at 0.1/0.5/0.9. `first_position` is the series position of the
/// first forecast step (used for the day-of-week feature).
Forecast deepar_forecast(const FittedDeepAr& model,
                         const std::vector<double>& context,
                         std::size_t first_position, int horizon,
                         int num_samples, std::uint64_t seed);

/// Predictive (mu, sigma) of the first forecast step on the original scale.
std::pair<double, double> deepar_one_step(const FittedDeepAr& model,
                                          const std::vector<double>& context,
                                          std::size_t first_position);

}  // namespace tsbench::nn
