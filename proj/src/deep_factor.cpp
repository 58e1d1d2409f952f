// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/deep_factor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "tsbench/deepar.hpp"  // kDayCycle, kSigmaFloor
#include "tsbench/errors.hpp"
#include "tsbench/serialize.hpp"

namespace tsbench::nn {

namespace {

constexpr int kFeatureDim = 1 + kDayCycle;  // normalized position + day one-hot

void fill_feature_row(Tensor& x, std::size_t row, std::size_t position,
                      std::size_t train_len) {
  x(row, 0) = static_cast<double>(position) /
              static_cast<double>(std::max<std::size_t>(train_len, 1));
  for (int i = 0; i < kDayCycle; ++i) x(row, 1 + static_cast<std::size_t>(i)) = 0.0;
  x(row, 1 + position % kDayCycle) = 1.0;
}

constexpr double kGaussConst = 0.9189385332046727;  // 0.5*log(2*pi)

}  // namespace

void DeepFactorConfig::validate() const {
  if (global_layers < 1 || global_hidden < 1 || local_layers < 1 ||
      local_hidden < 1 || num_factors < 1)
    throw InvalidArgumentError("deep factor config sizes must be >= 1");
}

std::vector<Parameter*> FittedDeepFactor::parameters() {
  std::vector<Parameter*> out = global_net.parameters();
  out.push_back(&factor_w);
  out.push_back(&factor_b);
  out.push_back(&loadings);
  for (Parameter* p : local_net.parameters()) out.push_back(p);
  out.push_back(&sigma_w);
  out.push_back(&sigma_b);
  return out;
}

FittedDeepFactor deepfactor_train(const WindowSet& windows,
                                  const DeepFactorConfig& config,
                                  const TrainConfig& train) {
  config.validate();
  train.validate();
  if (windows.windows.empty())
    throw InvalidArgumentError("deepfactor_train: no windows");

  FittedDeepFactor model;
  model.config = config;
  model.context_len = windows.context_len;
  model.window_len = windows.window_len();

  std::vector<double> all_values;
  std::size_t train_len = 0;
  for (const Window& w : windows.windows) {
    all_values.insert(all_values.end(), w.context.begin(), w.context.end());
    all_values.insert(all_values.end(), w.target.begin(), w.target.end());
    train_len = std::max(train_len,
                         w.origin + static_cast<std::size_t>(model.window_len));
  }
  model.scaler = Scaler::fit(all_values);
  model.train_len = train_len;

  CellConfig global_cell{CellKind::Lstm, config.global_hidden,
                         config.global_layers, kFeatureDim};
  CellConfig local_cell{CellKind::Lstm, config.local_hidden, config.local_layers,
                        kFeatureDim};
  rng::Rng rng(train.seed);
  model.global_net.init(global_cell, rng);
  model.local_net.init(local_cell, rng);

  const auto gh = static_cast<std::size_t>(config.global_hidden);
  const auto lh = static_cast<std::size_t>(config.local_hidden);
  const auto nf = static_cast<std::size_t>(config.num_factors);
  const double kg = 1.0 / std::sqrt(static_cast<double>(config.global_hidden));
  const double kl = 1.0 / std::sqrt(static_cast<double>(config.local_hidden));
  model.factor_w = Parameter("factor_w", gh, nf);
  model.factor_b = Parameter("factor_b", 1, nf);
  for (double& v : model.factor_w.value.data) v = rng.uniform(-kg, kg);
  model.loadings = Parameter("loadings", nf, 1);  // zero start
  model.sigma_w = Parameter("sigma_w", lh, 1);
  model.sigma_b = Parameter("sigma_b", 1, 1);
  for (double& v : model.sigma_w.value.data) v = rng.uniform(-kl, kl);

  const auto params = model.parameters();
  AdamOptimizer adam(params, train.learning_rate);

  const int steps = model.window_len;
  std::vector<std::vector<double>> scaled(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Window& w = windows.windows[i];
    auto& row = scaled[i];
    row.reserve(static_cast<std::size_t>(steps));
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
      auto global_views = use_stack(g, model.global_net);
      auto local_views = use_stack(g, model.local_net);
      auto factor_w = g.parameter(model.factor_w);
      auto factor_b = g.parameter(model.factor_b);
      auto loadings = g.parameter(model.loadings);
      auto sigma_w = g.parameter(model.sigma_w);
      auto sigma_b = g.parameter(model.sigma_b);
      auto gstate = zero_state(g, global_cell, batch);
      auto lstate = zero_state(g, local_cell, batch);

      Graph::Value total{};
      for (int t = 0; t < steps; ++t) {
        Tensor x(batch, kFeatureDim), y(batch, 1);
        for (std::size_t b = 0; b < batch; ++b) {
          const std::size_t wi = order[at + b];
          fill_feature_row(x, b, windows.windows[wi].origin + static_cast<std::size_t>(t),
                           train_len);
          y(b, 0) = scaled[wi][static_cast<std::size_t>(t)];
        }
        auto features = g.constant(std::move(x));
        auto gh_t = stack_step(g, global_cell, global_views, features, gstate);
        auto factors = g.add_row(g.matmul(gh_t, factor_w), factor_b);
        auto fixed = g.matmul(factors, loadings);
        auto lh_t = stack_step(g, local_cell, local_views, features, lstate);
        auto sigma = g.add_const(
            g.softplus(g.add_row(g.matmul(lh_t, sigma_w), sigma_b)), kSigmaFloor);
        auto z = g.div(g.sub(g.constant(std::move(y)), fixed), sigma);
        auto nll = g.add_const(g.add(g.scale(g.square(z), 0.5), g.log_(sigma)),
                               kGaussConst);
        auto contrib = g.sum(nll);
        total = t == 0 ? contrib : g.add(total, contrib);
      }
      auto loss = g.scale(
          total, 1.0 / static_cast<double>(batch * static_cast<std::size_t>(steps)));

      const double loss_value = g.scalar(loss);
      if (!std::isfinite(loss_value))
        throw NonFiniteLossError("deep factor: loss diverged at epoch " +
                                 std::to_string(epoch));
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

void FittedDeepFactor::evaluate(const std::vector<std::size_t>& positions,
                                std::vector<double>* fixed_effect,
                                std::vector<double>* noise_scale) const {
  CellConfig global_cell{CellKind::Lstm, config.global_hidden,
                         config.global_layers, kFeatureDim};
  CellConfig local_cell{CellKind::Lstm, config.local_hidden, config.local_layers,
                        kFeatureDim};
  EvalBackend ev;
  auto& self = const_cast<FittedDeepFactor&>(*this);
  auto global_views = use_stack(ev, self.global_net);
  auto local_views = use_stack(ev, self.local_net);
  auto gstate = zero_state(ev, global_cell, 1);
  auto lstate = zero_state(ev, local_cell, 1);

  fixed_effect->clear();
  noise_scale->clear();
  for (std::size_t pos : positions) {
    Tensor x(1, kFeatureDim);
    fill_feature_row(x, 0, pos, train_len);
    Tensor gh_t = stack_step(ev, global_cell, global_views, x, gstate);
    Tensor factors = ev.add_row(ev.matmul(gh_t, factor_w.value), factor_b.value);
    Tensor fixed = ev.matmul(factors, loadings.value);
    Tensor lh_t = stack_step(ev, local_cell, local_views, x, lstate);
    Tensor sigma = ev.add_const(
        ev.softplus(ev.add_row(ev.matmul(lh_t, sigma_w.value), sigma_b.value)),
        kSigmaFloor);
    fixed_effect->push_back(fixed(0, 0));
    noise_scale->push_back(sigma(0, 0));
  }
}

Forecast deepfactor_forecast(const FittedDeepFactor& model, int horizon,
                             int num_samples, std::uint64_t seed,
                             std::optional<std::size_t> first_position) {
  if (horizon < 1) throw InvalidArgumentError("horizon must be >= 1");
  if (num_samples < 1) throw InvalidArgumentError("num_samples must be >= 1");

  const std::size_t first = first_position.value_or(model.train_len);
  const std::size_t warm = std::min<std::size_t>(
      static_cast<std::size_t>(model.context_len), first);
  std::vector<std::size_t> positions;
  positions.reserve(warm + static_cast<std::size_t>(horizon));
  for (std::size_t p = first - warm; p < first + static_cast<std::size_t>(horizon);
       ++p)
    positions.push_back(p);

  std::vector<double> fixed, sigma;
  model.evaluate(positions, &fixed, &sigma);

  Forecast out;
  out.point.resize(static_cast<std::size_t>(horizon));
  for (int j = 0; j < horizon; ++j)
    out.point[static_cast<std::size_t>(j)] =
        model.scaler.from(fixed[warm + static_cast<std::size_t>(j)]);

  rng::Rng rng(seed);
  out.samples.assign(static_cast<std::size_t>(num_samples),
                     std::vector<double>(static_cast<std::size_t>(horizon)));
  for (auto& path : out.samples)
    for (int j = 0; j < horizon; ++j) {
      const std::size_t idx = warm + static_cast<std::size_t>(j);
      path[static_cast<std::size_t>(j)] =
          model.scaler.from(fixed[idx] + sigma[idx] * rng.normal());
    }
  attach_quantiles(out, {0.1, 0.5, 0.9});
  return out;
}

void FittedDeepFactor::save(std::ostream& os) const {
  os << kModelMagic << "\n";
  os << "kind deepfactor\n";
  os << "global_layers " << config.global_layers << "\n";
  os << "global_hidden " << config.global_hidden << "\n";
  os << "local_layers " << config.local_layers << "\n";
  os << "local_hidden " << config.local_hidden << "\n";
  os << "factors " << config.num_factors << "\n";
  os << "scaler ";
  write_double(os, scaler.mean);
  os << ' ';
  write_double(os, scaler.sd);
  os << "\n";
  os << "train_len " << train_len << "\n";
  os << "context " << context_len << "\n";
  os << "window " << window_len << "\n";
  for (const Parameter* p :
       const_cast<FittedDeepFactor*>(this)->parameters())
    write_param(os, *p);
}

FittedDeepFactor FittedDeepFactor::load(std::istream& is) {
  expect_token(is, "tsbench-model");
  expect_token(is, "v1");
  expect_token(is, "kind");
  expect_token(is, "deepfactor");

  FittedDeepFactor model;
  expect_token(is, "global_layers");
  model.config.global_layers = std::stoi(read_token(is));
  expect_token(is, "global_hidden");
  model.config.global_hidden = std::stoi(read_token(is));
  expect_token(is, "local_layers");
  model.config.local_layers = std::stoi(read_token(is));
  expect_token(is, "local_hidden");
  model.config.local_hidden = std::stoi(read_token(is));
  expect_token(is, "factors");
  model.config.num_factors = std::stoi(read_token(is));
  expect_token(is, "scaler");
  model.scaler.mean = read_double(is);
  model.scaler.sd = read_double(is);
  expect_token(is, "train_len");
  model.train_len = std::stoul(read_token(is));
  expect_token(is, "context");
  model.context_len = std::stoi(read_token(is));
  expect_token(is, "window");
  model.window_len = std::stoi(read_token(is));

  CellConfig global_cell{CellKind::Lstm, model.config.global_hidden,
                         model.config.global_layers, kFeatureDim};
  CellConfig local_cell{CellKind::Lstm, model.config.local_hidden,
                        model.config.local_layers, kFeatureDim};
  rng::Rng dummy(0);
  model.global_net.init(global_cell, dummy);
  model.local_net.init(local_cell, dummy);
  const auto gh = static_cast<std::size_t>(model.config.global_hidden);
  const auto lh = static_cast<std::size_t>(model.config.local_hidden);
  const auto nf = static_cast<std::size_t>(model.config.num_factors);
  model.factor_w = Parameter("factor_w", gh, nf);
  model.factor_b = Parameter("factor_b", 1, nf);
  model.loadings = Parameter("loadings", nf, 1);
  model.sigma_w = Parameter("sigma_w", lh, 1);
  model.sigma_b = Parameter("sigma_b", 1, 1);
  for (Parameter* p : model.parameters()) read_param(is, *p);
  return model;
}

}  // namespace tsbench::nn
