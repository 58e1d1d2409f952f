// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "testutil.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/point_forecaster.hpp"
#include "tsbench/simulate.hpp"

using namespace tsbench;
using namespace tsbench::nn;

namespace {

FittedNeural train_sine(CellKind kind, int hidden, int epochs,
                        std::uint64_t seed) {
  const Series s = sim::sine(200, 1, 20.0, 1.0, 10.0, 0.0);
  const auto windows = make_windows(s, 5, 5);
  CellConfig cfg{kind, hidden, 1, 1};
  TrainConfig tc;
  tc.epochs = epochs;
  tc.seed = seed;
  return train_point_forecaster(windows, cfg, tc);
}

bool same_weights(FittedNeural& a, FittedNeural& b) {
  auto pa = a.parameters(), pb = b.parameters();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (pa[i]->value.data != pb[i]->value.data) return false;
  return true;
}

}  // namespace

TEST_CASE("scaler round-trips values") {
  const Scaler s = Scaler::fit({3.0, 5.0, 7.0, 11.0});
  for (double v : {-2.0, 0.0, 3.7, 1234.5})
    CHECK(std::fabs(s.from(s.to(v)) - v) < 1e-9 * (1.0 + std::fabs(v)));
  // near-constant input keeps sd 1
  const Scaler flat = Scaler::fit({4.0, 4.0, 4.0});
  CHECK(flat.sd == 1.0);
  CHECK(flat.to(4.0) == 0.0);
}

TEST_CASE("adam drives a quadratic to its minimum") {
  Parameter w("w", 1, 3);
  w.value.data = {5.0, -3.0, 1.0};
  AdamOptimizer adam({&w}, 0.05);
  for (int it = 0; it < 400; ++it) {
    w.zero_grad();
    for (std::size_t j = 0; j < 3; ++j) w.grad.data[j] = 2.0 * w.value.data[j];
    adam.step();
  }
  for (double v : w.value.data) CHECK(std::fabs(v) < 1e-3);
}

TEST_CASE("global norm clipping bounds the gradient") {
  Parameter a("a", 1, 2), b("b", 1, 2);
  a.grad.data = {3.0, 4.0};
  b.grad.data = {0.0, 12.0};  // total norm 13
  const double before = clip_global_norm({&a, &b}, 5.0);
  CHECK(before == doctest::Approx(13.0));
  double sq = 0.0;
  for (double g : a.grad.data) sq += g * g;
  for (double g : b.grad.data) sq += g * g;
  CHECK(std::sqrt(sq) == doctest::Approx(5.0).epsilon(1e-12));
  // below the bound nothing changes
  const double before2 = clip_global_norm({&a, &b}, 50.0);
  CHECK(before2 == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("constant series trains to a constant forecast") {
  const Series s = testutil::series_of(std::vector<double>(60, 42.0));
  const auto windows = make_windows(s, 5, 5);
  CellConfig cfg{CellKind::Rnn, 8, 1, 1};
  TrainConfig tc;
  tc.epochs = 50;
  tc.seed = 3;
  const auto model = train_point_forecaster(windows, cfg, tc);
  const auto fc = forecast_recursive(model, std::vector<double>(10, 42.0), 5);
  for (double v : fc.point) CHECK(std::fabs(v - 42.0) < 1e-3);
}

TEST_CASE("same seed twice gives bit-identical weights") {
  auto a = train_sine(CellKind::Gru, 8, 10, 7);
  auto b = train_sine(CellKind::Gru, 8, 10, 7);
  CHECK(same_weights(a, b));
  auto c = train_sine(CellKind::Gru, 8, 10, 8);
  CHECK_FALSE(same_weights(a, c));
}

TEST_CASE("training loss is finite at every epoch and trends down") {
  const auto model = train_sine(CellKind::Lstm, 16, 40, 5);
  REQUIRE(model.epoch_losses.size() == 40);
  for (double loss : model.epoch_losses) CHECK(std::isfinite(loss));
  CHECK(model.epoch_losses.back() < model.epoch_losses.front());
}

TEST_CASE("sine convergence (reduced size; acceptance runs the full case)") {
  const auto model = train_sine(CellKind::Lstm, 16, 100, 42);
  const Series s = sim::sine(260, 1, 20.0, 1.0, 10.0, 0.0);

  double sse = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 10; t + 1 < 200; t += 3) {
    std::vector<double> ctx(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(t));
    const auto fc = forecast_recursive(model, ctx, 1);
    sse += (fc.point[0] - s.values[t]) * (fc.point[0] - s.values[t]);
    ++count;
  }
  CHECK(std::sqrt(sse / static_cast<double>(count)) < 0.1);
}

TEST_CASE("forecast_recursive horizon 1 equals the one-step prediction") {
  const auto model = train_sine(CellKind::Rnn, 8, 15, 2);
  const Series s = sim::sine(40, 1, 20.0, 1.0, 10.0, 0.0);
  std::vector<double> ctx(s.values.begin(), s.values.begin() + 10);
  const auto one = forecast_recursive(model, ctx, 1);
  const auto five = forecast_recursive(model, ctx, 5);
  REQUIRE(one.point.size() == 1);
  REQUIRE(five.point.size() == 5);
  CHECK(one.point[0] == five.point[0]);
}

TEST_CASE("forecast_recursive rejects short contexts") {
  const auto model = train_sine(CellKind::Rnn, 8, 5, 2);
  CHECK_THROWS_AS(forecast_recursive(model, {1.0, 2.0}, 3), ContextTooShortError);
  CHECK_THROWS_AS(forecast_recursive(model, std::vector<double>(10, 1.0), 0),
                  InvalidArgumentError);
}

TEST_CASE("train_point_forecaster validates its inputs") {
  WindowSet empty;
  CellConfig cfg;
  TrainConfig tc;
  CHECK_THROWS_AS(train_point_forecaster(empty, cfg, tc), InvalidArgumentError);

  const Series s = sim::sine(60, 1);
  const auto windows = make_windows(s, 5, 5);
  TrainConfig bad_lr;
  bad_lr.learning_rate = 2.0;  // above the invariant bound
  CHECK_THROWS_AS(train_point_forecaster(windows, cfg, bad_lr), InvalidArgumentError);
  CellConfig bad_cell;
  bad_cell.hidden_size = 0;
  CHECK_THROWS_AS(train_point_forecaster(windows, bad_cell, tc), InvalidArgumentError);
}

TEST_CASE("save/load round-trips a fitted model exactly") {
  auto model = train_sine(CellKind::Lstm, 8, 10, 11);
  std::stringstream buf;
  model.save(buf);
  auto loaded = FittedNeural::load(buf);

  CHECK(loaded.config.kind == model.config.kind);
  CHECK(loaded.config.hidden_size == model.config.hidden_size);
  CHECK(loaded.scaler.mean == model.scaler.mean);
  CHECK(loaded.scaler.sd == model.scaler.sd);
  CHECK(same_weights(model, loaded));

  // identical forecasts from the reloaded model
  const Series s = sim::sine(40, 1, 20.0, 1.0, 10.0, 0.0);
  std::vector<double> ctx(s.values.begin(), s.values.begin() + 10);
  CHECK(forecast_recursive(model, ctx, 5).point ==
        forecast_recursive(loaded, ctx, 5).point);
}

TEST_CASE("corrupt model dumps are rejected") {
  std::stringstream buf("tsbench-model v1\nkind point\ncell nosuch\n");
  CHECK_THROWS_AS(FittedNeural::load(buf), Error);
  std::stringstream empty;
  CHECK_THROWS_AS(FittedNeural::load(empty), IoError);
}
