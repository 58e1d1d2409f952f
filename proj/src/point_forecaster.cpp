// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/point_forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "tsbench/errors.hpp"
#include "tsbench/serialize.hpp"

namespace tsbench::nn {

std::vector<Parameter*> FittedNeural::parameters() {
  std::vector<Parameter*> out = stack.parameters();
  out.push_back(&head_w);
  out.push_back(&head_b);
  return out;
}

FittedNeural train_point_forecaster(const WindowSet& windows,
                                    const CellConfig& config,
                                    const TrainConfig& train) {
  config.validate();
  train.validate();
  if (config.input_size != 1)
    throw InvalidArgumentError("point forecaster takes input_size 1");
  if (windows.windows.empty())
    throw InvalidArgumentError("train_point_forecaster: no windows");

  std::vector<double> all_values;
  for (const Window& w : windows.windows) {
    all_values.insert(all_values.end(), w.context.begin(), w.context.end());
    all_values.insert(all_values.end(), w.target.begin(), w.target.end());
  }

  FittedNeural model;
  model.scaler = Scaler::fit(all_values);
  model.context_len = windows.context_len;

  rng::Rng rng(train.seed);
  model.config = config;
  model.stack.init(config, rng);
  const auto hidden = static_cast<std::size_t>(config.hidden_size);
  const double k = 1.0 / std::sqrt(static_cast<double>(config.hidden_size));
  model.head_w = Parameter("head_w", hidden, 1);
  for (double& v : model.head_w.value.data) v = rng.uniform(-k, k);
  model.head_b = Parameter("head_b", 1, 1);

  const auto params = model.parameters();
  AdamOptimizer adam(params, train.learning_rate);

  // scaled window values, laid out window-major
  const int steps = windows.window_len() - 1;  // one-step pairs per window
  std::vector<std::vector<double>> scaled(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Window& w = windows.windows[i];
    auto& row = scaled[i];
    row.reserve(static_cast<std::size_t>(windows.window_len()));
    for (double v : w.context) row.push_back(model.scaler.to(v));
    for (double v : w.target) row.push_back(model.scaler.to(v));
  }

  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 shuffler(rng::derive_seed(train.seed, 0x5u));

  for (int epoch = 0; epoch < train.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffler);
    double epoch_loss = 0.0;
    std::size_t epoch_batches = 0;

    for (std::size_t at = 0; at < order.size();
         at += static_cast<std::size_t>(train.batch_size)) {
      const std::size_t batch = std::min<std::size_t>(
          static_cast<std::size_t>(train.batch_size), order.size() - at);

      Graph g;
      auto views = use_stack(g, model.stack);
      auto head_w = g.parameter(model.head_w);
      auto head_b = g.parameter(model.head_b);
      auto state = zero_state(g, config, batch);

      Graph::Value total{};
      for (int t = 0; t < steps; ++t) {
        Tensor x(batch, 1), y(batch, 1);
        for (std::size_t b = 0; b < batch; ++b) {
          const auto& row = scaled[order[at + b]];
          x(b, 0) = row[static_cast<std::size_t>(t)];
          y(b, 0) = row[static_cast<std::size_t>(t) + 1];
        }
        auto h = stack_step(g, config, views, g.constant(std::move(x)), state);
        auto pred = g.add_row(g.matmul(h, head_w), head_b);
        auto err = g.sum(g.square(g.sub(pred, g.constant(std::move(y)))));
        total = t == 0 ? err : g.add(total, err);
      }
      auto loss = g.scale(total, 1.0 / static_cast<double>(batch * static_cast<std::size_t>(steps)));

      const double loss_value = g.scalar(loss);
      if (!std::isfinite(loss_value))
        throw NonFiniteLossError("point forecaster: loss diverged at epoch " +
                                 std::to_string(epoch) + " (batch " +
                                 std::to_string(at / static_cast<std::size_t>(train.batch_size)) +
                                 ")");
      epoch_loss += loss_value;
      ++epoch_batches;

      adam.zero_grad();
      g.backward(loss);
      clip_global_norm(params, train.grad_clip);
      adam.step();
    }
    model.epoch_losses.push_back(epoch_loss / static_cast<double>(epoch_batches));
  }
  model.final_loss = model.epoch_losses.back();
  return model;
}

Forecast forecast_recursive(const FittedNeural& model,
                            const std::vector<double>& context, int horizon) {
  if (horizon < 1) throw InvalidArgumentError("horizon must be >= 1");
  if (context.size() < static_cast<std::size_t>(model.context_len))
    throw ContextTooShortError("forecast_recursive: context has " +
                               std::to_string(context.size()) + " values, model needs " +
                               std::to_string(model.context_len));

  EvalBackend ev;
  auto& stack = const_cast<CellStack&>(model.stack);
  auto views = use_stack(ev, stack);
  const Tensor& head_w = model.head_w.value;
  const Tensor& head_b = model.head_b.value;
  auto state = zero_state(ev, model.config, 1);

  auto step_once = [&](double scaled_in) {
    Tensor x(1, 1);
    x(0, 0) = scaled_in;
    Tensor h = stack_step(ev, model.config, views, x, state);
    Tensor pred = ev.add_row(ev.matmul(h, head_w), head_b);
    return pred(0, 0);
  };

  double next = 0.0;
  for (double v : context) next = step_once(model.scaler.to(v));

  Forecast out;
  out.point.reserve(static_cast<std::size_t>(horizon));
  out.point.push_back(model.scaler.from(next));
  for (int t = 1; t < horizon; ++t) {
    next = step_once(next);
    out.point.push_back(model.scaler.from(next));
  }
  return out;
}

void FittedNeural::save(std::ostream& os) const {
  os << kModelMagic << "\n";
  os << "kind point\n";
  os << "cell " << cell_kind_name(config.kind) << "\n";
  os << "hidden " << config.hidden_size << "\n";
  os << "layers " << config.num_layers << "\n";
  os << "input " << config.input_size << "\n";
  os << "context " << context_len << "\n";
  os << "scaler ";
  write_double(os, scaler.mean);
  os << ' ';
  write_double(os, scaler.sd);
  os << "\n";
  for (const Parameter* p : const_cast<FittedNeural*>(this)->parameters())
    write_param(os, *p);
}

FittedNeural FittedNeural::load(std::istream& is) {
  expect_token(is, "tsbench-model");
  expect_token(is, "v1");
  expect_token(is, "kind");
  expect_token(is, "point");

  FittedNeural model;
  expect_token(is, "cell");
  model.config.kind = cell_kind_from_name(read_token(is));
  expect_token(is, "hidden");
  model.config.hidden_size = std::stoi(read_token(is));
  expect_token(is, "layers");
  model.config.num_layers = std::stoi(read_token(is));
  expect_token(is, "input");
  model.config.input_size = std::stoi(read_token(is));
  expect_token(is, "context");
  model.context_len = std::stoi(read_token(is));
  expect_token(is, "scaler");
  model.scaler.mean = read_double(is);
  model.scaler.sd = read_double(is);

  rng::Rng dummy(0);
  model.stack.init(model.config, dummy);
  model.head_w = Parameter("head_w", static_cast<std::size_t>(model.config.hidden_size), 1);
  model.head_b = Parameter("head_b", 1, 1);
  for (Parameter* p : model.parameters()) read_param(is, *p);
  return model;
}

}  // namespace tsbench::nn
