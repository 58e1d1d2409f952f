// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "tsbench/cells.hpp"
#include "tsbench/forecast.hpp"
#include "tsbench/series.hpp"
#include "tsbench/train.hpp"

namespace tsbench::nn {

/// A trained deterministic recurrent forecaster: the recurrent stack, a
/// linear head to one output, and the standardization fitted on the
/// training windows.
struct FittedNeural {
  CellConfig config;
  CellStack stack;
  Parameter head_w;  // hidden x 1
  Parameter head_b;  // 1 x 1
  Scaler scaler;
  int context_len = 5;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;

  std::vector<Parameter*> parameters();

  void save(std::ostream& os) const;
  static FittedNeural load(std::istream& is);
};

/// One-step-ahead teacher forcing over each context+target window with
/// squared-error loss, Adam, and global-norm gradient clipping. Training is
/// deterministic for a fixed seed. Values are standardized by the training
/// windows' mean and standard deviation. Throws NonFiniteLossError if the
/// loss leaves the real line.
FittedNeural train_point_forecaster(const WindowSet& windows,
                                    const CellConfig& config,
                                    const TrainConfig& train);

/// Warms the state on the (raw) context, then feeds each one-step
/// prediction back for `horizon` steps. Requires context length >= the
/// model's context length.
Forecast forecast_recursive(const FittedNeural& model,
                            const std::vector<double>& context, int horizon);

}  // namespace tsbench::nn
