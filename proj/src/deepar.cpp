// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/deepar.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "tsbench/errors.hpp"
#include "tsbench/serialize.hpp"

namespace tsbench::nn {

namespace {

constexpr int kFeatureDim = 1 + kDayCycle;  // prev value + day one-hot

void fill_input_row(Tensor& x, std::size_t row, double prev_scaled,
                    std::size_t position) {
  x(row, 0) = prev_scaled;
  for (int i = 0; i < kDayCycle; ++i) x(row, 1 + static_cast<std::size_t>(i)) = 0.0;
  x(row, 1 + position % kDayCycle) = 1.0;
}

double gaussian_nll_const() { return 0.5 * std::log(2.0 * 3.14159265358979323846); }

double student_t_nll_const(double dof) {
  return std::lgamma(dof / 2.0) - std::lgamma((dof + 1.0) / 2.0) +
         0.5 * std::log(dof * 3.14159265358979323846);
}

}  // namespace

void DeepArConfig::validate() const {
  if (num_layers < 1 || hidden < 1)
    throw InvalidArgumentError("deepar: layers and hidden must be >= 1");
  if (num_samples < 2) throw InvalidArgumentError("deepar: num_samples must be >= 2");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw InvalidArgumentError("deepar: learning_rate must be in (0, 1]");
  if (likelihood == Likelihood::StudentT && !(student_t_dof > 2.0))
    throw InvalidArgumentError("deepar: student_t_dof must exceed 2");
}

double deepar_scale_factor(const std::vector<double>& context, bool scaling) {
  if (!scaling || context.empty()) return 1.0;
  double mean = 0.0;
  for (double v : context) mean += v;
  mean /= static_cast<double>(context.size());
  double nu = 1.0 + mean;
  if (std::abs(nu) < 1e-2) nu = nu < 0.0 ? -1e-2 : 1e-2;
  return nu;
}

std::vector<Parameter*> FittedDeepAr::parameters() {
  std::vector<Parameter*> out = stack.parameters();
  out.push_back(&mu_w);
  out.push_back(&mu_b);
  out.push_back(&sigma_w);
  out.push_back(&sigma_b);
  return out;
}

FittedDeepAr deepar_train(const WindowSet& windows, const DeepArConfig& config,
                          const TrainConfig& train) {
  config.validate();
  train.validate();
  if (windows.windows.empty())
    throw InvalidArgumentError("deepar_train: no windows");

  FittedDeepAr model;
  model.config = config;
  model.context_len = windows.context_len;
  model.window_len = windows.window_len();

  CellConfig cell{CellKind::Lstm, config.hidden, config.num_layers, kFeatureDim};
  rng::Rng rng(train.seed);
  model.stack.init(cell, rng);
  const auto hidden = static_cast<std::size_t>(config.hidden);
  const double k = 1.0 / std::sqrt(static_cast<double>(config.hidden));
  model.mu_w = Parameter("mu_w", hidden, 1);
  model.mu_b = Parameter("mu_b", 1, 1);
  model.sigma_w = Parameter("sigma_w", hidden, 1);
  model.sigma_b = Parameter("sigma_b", 1, 1);
  for (double& v : model.mu_w.value.data) v = rng.uniform(-k, k);
  for (double& v : model.sigma_w.value.data) v = rng.uniform(-k, k);

  const auto params = model.parameters();
  AdamOptimizer adam(params, config.learning_rate);

  // per-window scale and scaled values
  const std::size_t n_windows = windows.size();
  std::vector<double> scale(n_windows);
  std::vector<std::vector<double>> scaled(n_windows);
  for (std::size_t i = 0; i < n_windows; ++i) {
    const Window& w = windows.windows[i];
    scale[i] = deepar_scale_factor(w.context, config.scaling);
    auto& row = scaled[i];
    row.reserve(static_cast<std::size_t>(model.window_len));
    for (double v : w.context) row.push_back(v / scale[i]);
    for (double v : w.target) row.push_back(v / scale[i]);
  }

  const double nll_const = config.likelihood == DeepArConfig::Likelihood::Gaussian
                               ? gaussian_nll_const()
                               : student_t_nll_const(config.student_t_dof);
  const int steps = model.window_len - 1;

  std::vector<std::size_t> order(n_windows);
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
      auto mu_w = g.parameter(model.mu_w);
      auto mu_b = g.parameter(model.mu_b);
      auto sigma_w = g.parameter(model.sigma_w);
      auto sigma_b = g.parameter(model.sigma_b);
      auto state = zero_state(g, cell, batch);

      Graph::Value total{};
      for (int t = 1; t <= steps; ++t) {
        Tensor x(batch, kFeatureDim), y(batch, 1);
        for (std::size_t b = 0; b < batch; ++b) {
          const std::size_t wi = order[at + b];
          const auto& row = scaled[wi];
          const std::size_t pos = windows.windows[wi].origin + static_cast<std::size_t>(t);
          fill_input_row(x, b, row[static_cast<std::size_t>(t) - 1], pos);
          y(b, 0) = row[static_cast<std::size_t>(t)];
        }
        auto h = stack_step(g, cell, views, g.constant(std::move(x)), state);
        auto mu = g.add_row(g.matmul(h, mu_w), mu_b);
        auto sigma = g.add_const(g.softplus(g.add_row(g.matmul(h, sigma_w), sigma_b)),
                                 kSigmaFloor);
        auto z = g.div(g.sub(g.constant(std::move(y)), mu), sigma);
        Graph::Value nll;
        if (config.likelihood == DeepArConfig::Likelihood::Gaussian) {
          nll = g.add(g.scale(g.square(z), 0.5), g.log_(sigma));
        } else {
          const double dof = config.student_t_dof;
          auto quad = g.log_(g.add_const(g.scale(g.square(z), 1.0 / dof), 1.0));
          nll = g.add(g.scale(quad, (dof + 1.0) / 2.0), g.log_(sigma));
        }
        auto contrib = g.sum(g.add_const(nll, nll_const));
        total = t == 1 ? contrib : g.add(total, contrib);
      }
      auto loss = g.scale(
          total, 1.0 / static_cast<double>(batch * static_cast<std::size_t>(steps)));

      const double loss_value = g.scalar(loss);
      if (!std::isfinite(loss_value))
        throw NonFiniteLossError("deepar: loss diverged at epoch " +
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

Forecast deepar_forecast(const FittedDeepAr& model,
                         const std::vector<double>& context,
                         std::size_t first_position, int horizon,
                         int num_samples, std::uint64_t seed) {
  if (context.empty()) throw ContextTooShortError("deepar_forecast: empty context");
  if (horizon < 1) throw InvalidArgumentError("horizon must be >= 1");
  if (num_samples < 2) throw InvalidArgumentError("num_samples must be >= 2");
  if (first_position < context.size())
    throw InvalidArgumentError("deepar_forecast: first_position precedes the context");

  // scale from the most recent context_len values, mirroring training
  const std::size_t ctx = std::min<std::size_t>(
      context.size(), static_cast<std::size_t>(model.context_len));
  std::vector<double> recent(context.end() - static_cast<std::ptrdiff_t>(ctx),
                             context.end());
  const double nu = deepar_scale_factor(recent, model.config.scaling);

  const auto batch = static_cast<std::size_t>(num_samples);
  CellConfig cell{CellKind::Lstm, model.config.hidden, model.config.num_layers,
                  kFeatureDim};
  EvalBackend ev;
  auto views = use_stack(ev, const_cast<CellStack&>(model.stack));
  auto state = zero_state(ev, cell, batch);

  auto emit = [&](const Tensor& x) {
    Tensor h = stack_step(ev, cell, views, x, state);
    Tensor mu = ev.add_row(ev.matmul(h, model.mu_w.value), model.mu_b.value);
    Tensor sig = ev.add_const(
        ev.softplus(ev.add_row(ev.matmul(h, model.sigma_w.value), model.sigma_b.value)),
        kSigmaFloor);
    return std::pair<Tensor, Tensor>(std::move(mu), std::move(sig));
  };

  // teacher-forced warm-up over the context (identical rows per sample path)
  const std::size_t ctx_start = first_position - context.size();
  Tensor mu, sig;
  for (std::size_t t = 1; t < context.size(); ++t) {
    Tensor x(batch, kFeatureDim);
    for (std::size_t b = 0; b < batch; ++b)
      fill_input_row(x, b, context[t - 1] / nu, ctx_start + t);
    std::tie(mu, sig) = emit(x);
  }

  rng::Rng rng(seed);
  Forecast out;
  out.samples.assign(batch, std::vector<double>(static_cast<std::size_t>(horizon)));
  std::vector<double> prev(batch, context.back() / nu);

  for (int j = 0; j < horizon; ++j) {
    Tensor x(batch, kFeatureDim);
    const std::size_t pos = first_position + static_cast<std::size_t>(j);
    for (std::size_t b = 0; b < batch; ++b) fill_input_row(x, b, prev[b], pos);
    std::tie(mu, sig) = emit(x);
    for (std::size_t b = 0; b < batch; ++b) {
      const double eps =
          model.config.likelihood == DeepArConfig::Likelihood::Gaussian
              ? rng.normal()
              : rng.student_t(model.config.student_t_dof);
      const double draw = mu(b, 0) + sig(b, 0) * eps;
      prev[b] = draw;
      out.samples[b][static_cast<std::size_t>(j)] = draw * nu;
    }
  }

  // point path = per-step median of the sample paths
  out.point.resize(static_cast<std::size_t>(horizon));
  std::vector<double> column(batch);
  for (int j = 0; j < horizon; ++j) {
    for (std::size_t b = 0; b < batch; ++b)
      column[b] = out.samples[b][static_cast<std::size_t>(j)];
    std::sort(column.begin(), column.end());
    const std::size_t mid = batch / 2;
    out.point[static_cast<std::size_t>(j)] =
        batch % 2 == 1 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
  }
  attach_quantiles(out, {0.1, 0.5, 0.9});
  return out;
}

std::pair<double, double> deepar_one_step(const FittedDeepAr& model,
                                          const std::vector<double>& context,
                                          std::size_t first_position) {
  if (context.empty()) throw ContextTooShortError("deepar_one_step: empty context");
  if (first_position < context.size())
    throw InvalidArgumentError("deepar_one_step: first_position precedes the context");

  const std::size_t ctx = std::min<std::size_t>(
      context.size(), static_cast<std::size_t>(model.context_len));
  std::vector<double> recent(context.end() - static_cast<std::ptrdiff_t>(ctx),
                             context.end());
  const double nu = deepar_scale_factor(recent, model.config.scaling);

  CellConfig cell{CellKind::Lstm, model.config.hidden, model.config.num_layers,
                  kFeatureDim};
  EvalBackend ev;
  auto views = use_stack(ev, const_cast<CellStack&>(model.stack));
  auto state = zero_state(ev, cell, 1);

  const std::size_t ctx_start = first_position - context.size();
  Tensor h;
  for (std::size_t t = 1; t <= context.size(); ++t) {
    Tensor x(1, kFeatureDim);
    fill_input_row(x, 0, context[t - 1] / nu, ctx_start + t);
    h = stack_step(ev, cell, views, x, state);
  }
  const Tensor mu = ev.add_row(ev.matmul(h, model.mu_w.value), model.mu_b.value);
  const Tensor sig = ev.add_const(
      ev.softplus(ev.add_row(ev.matmul(h, model.sigma_w.value), model.sigma_b.value)),
      kSigmaFloor);
  return {mu(0, 0) * nu, sig(0, 0) * std::abs(nu)};
}

void FittedDeepAr::save(std::ostream& os) const {
  os << kModelMagic << "\n";
  os << "kind deepar\n";
  os << "hidden " << config.hidden << "\n";
  os << "layers " << config.num_layers << "\n";
  os << "scaling " << (config.scaling ? 1 : 0) << "\n";
  os << "likelihood "
     << (config.likelihood == DeepArConfig::Likelihood::Gaussian ? "gaussian"
                                                                 : "student_t")
     << "\n";
  os << "dof ";
  write_double(os, config.student_t_dof);
  os << "\n";
  os << "context " << context_len << "\n";
  os << "window " << window_len << "\n";
  for (const Parameter* p :
       const_cast<FittedDeepAr*>(this)->parameters())
    write_param(os, *p);
}

FittedDeepAr FittedDeepAr::load(std::istream& is) {
  expect_token(is, "tsbench-model");
  expect_token(is, "v1");
  expect_token(is, "kind");
  expect_token(is, "deepar");

  FittedDeepAr model;
  expect_token(is, "hidden");
  model.config.hidden = std::stoi(read_token(is));
  expect_token(is, "layers");
  model.config.num_layers = std::stoi(read_token(is));
  expect_token(is, "scaling");
  model.config.scaling = std::stoi(read_token(is)) != 0;
  expect_token(is, "likelihood");
  model.config.likelihood = read_token(is) == "student_t"
                                ? DeepArConfig::Likelihood::StudentT
                                : DeepArConfig::Likelihood::Gaussian;
  expect_token(is, "dof");
  model.config.student_t_dof = read_double(is);
  expect_token(is, "context");
  model.context_len = std::stoi(read_token(is));
  expect_token(is, "window");
  model.window_len = std::stoi(read_token(is));

  CellConfig cell{CellKind::Lstm, model.config.hidden, model.config.num_layers,
                  kFeatureDim};
  rng::Rng dummy(0);
  model.stack.init(cell, dummy);
  const auto hidden = static_cast<std::size_t>(model.config.hidden);
  model.mu_w = Parameter("mu_w", hidden, 1);
  model.mu_b = Parameter("mu_b", 1, 1);
  model.sigma_w = Parameter("sigma_w", hidden, 1);
  model.sigma_b = Parameter("sigma_b", 1, 1);
  for (Parameter* p : model.parameters()) read_param(is, *p);
  return model;
}

}  // namespace tsbench::nn
