// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "tsbench/autodiff.hpp"

namespace tsbench::nn {

struct TrainConfig {
  double learning_rate = 0.001;
  int epochs = 200;
  int batch_size = 32;
  std::uint64_t seed = 0;
  double grad_clip = 5.0;  // global norm bound

  void validate() const;
};

/// Adam with bias correction (beta1 0.9, beta2 0.999, eps 1e-8).
class AdamOptimizer {
 public:
  AdamOptimizer(std::vector<Parameter*> params, double learning_rate);

  void step();
  void zero_grad();

 private:
  std::vector<Parameter*> params_;
  std::vector<Tensor> m_, v_;
  double lr_;
  double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  long t_ = 0;
};

/// Scales gradients so their global L2 norm is at most max_norm; returns the
/// norm before clipping.
double clip_global_norm(const std::vector<Parameter*>& params, double max_norm);

/// Training-set standardization; an (almost) zero-variance set keeps sd 1 so
/// constant series stay trainable.
struct Scaler {
  double mean = 0.0;
  double sd = 1.0;

  double to(double x) const { return (x - mean) / sd; }
  double from(double z) const { return mean + sd * z; }

  static Scaler fit(const std::vector<double>& values);
};

}  // namespace tsbench::nn
