// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tsbench/cells.hpp"
#include "tsbench/forecast.hpp"
#include "tsbench/series.hpp"
#include "tsbench/train.hpp"

namespace tsbench::nn {

struct DeepFactorConfig {
  int global_layers = 1;
  int global_hidden = 50;
  int local_layers = 5;
  int local_hidden = 5;
  int num_factors = 10;

  void validate() const;
};

/// Global/local decomposition: a global LSTM maps time features (normalized
/// position + pseudo day-of-week one-hot) to num_factors factor values whose
/// learned loading combination is the fixed effect; a separate local LSTM
/// emits a per-step Gaussian noise scale. Trained jointly on the negative
/// log-likelihood N(fixed effect, sigma_t^2) of the standardized targets.
struct FittedDeepFactor {
  DeepFactorConfig config;
  CellStack global_net;
  Parameter factor_w, factor_b;  // global hidden -> num_factors
  Parameter loadings;            // num_factors -> 1, zero-initialized
  CellStack local_net;
  Parameter sigma_w, sigma_b;    // local hidden -> 1, softplus + floor
  Scaler scaler;
  std::size_t train_len = 0;     // feature normalization anchor
  int context_len = 5;
  int window_len = 10;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;

  std::vector<Parameter*> parameters();

  /// Fixed effect and noise scale (standardized units) at the given
  /// positions, state warmed from the first position in the list.
  void evaluate(const std::vector<std::size_t>& positions,
                std::vector<double>* fixed_effect,
                std::vector<double>* noise_scale) const;

  void save(std::ostream& os) const;
  static FittedDeepFactor load(std::istream& is);
};

FittedDeepFactor deepfactor_train(const WindowSet& windows,
                                  const DeepFactorConfig& config,
                                  const TrainConfig& train);

/// Point path is the (deterministic) fixed effect; samples add Gaussian
/// noise at the local scale. Forecast starts at `first_position` (default:
/// end of training range) with a context_len warm-up before it.
Forecast deepfactor_forecast(const FittedDeepFactor& model, int horizon,
                             int num_samples, std::uint64_t seed,
                             std::optional<std::size_t> first_position = {});

}  // namespace tsbench::nn
