// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/train.hpp"

#include <cmath>

#include "tsbench/errors.hpp"

namespace tsbench::nn {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw InvalidArgumentError("learning_rate must be in (0, 1]");
  if (epochs < 1) throw InvalidArgumentError("epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgumentError("batch_size must be >= 1");
  if (!(grad_clip > 0.0)) throw InvalidArgumentError("grad_clip must be > 0");
}

AdamOptimizer::AdamOptimizer(std::vector<Parameter*> params, double learning_rate)
    : params_(std::move(params)), lr_(learning_rate) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const Parameter* p : params_) {
    m_.emplace_back(p->value.rows(), p->value.cols());
    v_.emplace_back(p->value.rows(), p->value.cols());
  }
}

void AdamOptimizer::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Parameter& p = *params_[i];
    for (std::size_t j = 0; j < p.value.size(); ++j) {
      const double g = p.grad.data[j];
      m_[i].data[j] = beta1_ * m_[i].data[j] + (1.0 - beta1_) * g;
      v_[i].data[j] = beta2_ * v_[i].data[j] + (1.0 - beta2_) * g * g;
      const double mhat = m_[i].data[j] / bc1;
      const double vhat = v_[i].data[j] / bc2;
      p.value.data[j] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

void AdamOptimizer::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

double clip_global_norm(const std::vector<Parameter*>& params, double max_norm) {
  double sq = 0.0;
  for (const Parameter* p : params)
    for (double g : p->grad.data) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double f = max_norm / norm;
    for (Parameter* p : params)
      for (double& g : p->grad.data) g *= f;
  }
  return norm;
}

Scaler Scaler::fit(const std::vector<double>& values) {
  Scaler s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(values.size());
  s.sd = var > 1e-24 ? std::sqrt(var) : 1.0;
  return s;
}

}  // namespace tsbench::nn
