// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "testutil.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/metrics.hpp"

using namespace tsbench;
using namespace tsbench::metrics;

namespace {
AlignedPair pair(std::vector<double> t, std::vector<double> o) {
  return AlignedPair{std::move(t), std::move(o)};
}
}  // namespace

TEST_CASE("mse hand cases") {
  CHECK(mse(pair({3, 3, 3}, {3, 3, 3})) == 0.0);
  CHECK(mse(pair({2, 4}, {1, 2})) == doctest::Approx(2.5).epsilon(1e-15));
  // symmetry under swapping target and output
  CHECK(mse(pair({2, 4}, {1, 2})) == mse(pair({1, 2}, {2, 4})));
}

TEST_CASE("rmse hand cases") {
  CHECK(rmse(pair({2, 4}, {1, 2})) == doctest::Approx(1.5811388300841898).epsilon(1e-12));
  CHECK(rmse(pair({7, 7}, {7, 7})) == 0.0);
  CHECK(rmse(pair({0, 0}, {3, 4})) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
}

TEST_CASE("mae hand cases") {
  CHECK(mae(pair({1, 5}, {2, 4})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mae(pair({2, 2}, {2, 2})) == 0.0);
  // absolute values prevent cancellation
  CHECK(mae(pair({2, 0}, {0, 2})) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("mape hand cases and denominator conventions") {
  CHECK(mape(pair({110}, {100})) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(mape(pair({110}, {100}), MapeDenominator::Target) ==
        doctest::Approx(100.0 * 10.0 / 110.0).epsilon(1e-12));
  CHECK(mape(pair({5, 5}, {5, 5})) == 0.0);
}

TEST_CASE("mape zero denominator reports the index") {
  try {
    mape(pair({1, 2, 3}, {1, 0, 3}));
    FAIL("expected ZeroDenominatorError");
  } catch (const ZeroDenominatorError& err) {
    CHECK(std::string(err.what()).find("index 1") != std::string::npos);
  }
  // target denominator checks the target vector instead
  CHECK_THROWS_AS(mape(pair({1, 0, 3}, {1, 2, 3}), MapeDenominator::Target),
                  ZeroDenominatorError);
  CHECK_NOTHROW(mape(pair({1, 0, 3}, {1, 2, 3}), MapeDenominator::Output));
}

TEST_CASE("pocid hand cases") {
  CHECK(pocid(pair({1, 2, 3, 2}, {1, 2, 4, 3})) == doctest::Approx(100.0));
  // constant output: every direction product is zero -> all incorrect
  CHECK(pocid(pair({1, 2, 3, 2}, {5, 5, 5, 5})) == 0.0);
  // perfect forecast of a strictly monotone path
  CHECK(pocid(pair({1, 2, 3, 4}, {1, 2, 3, 4})) == doctest::Approx(100.0));
  CHECK_THROWS_AS(pocid(pair({1}, {1})), SeriesTooShortError);
}

TEST_CASE("theils_u hand cases") {
  CHECK(theils_u(pair({10, 12, 11}, {11, 11, 13})) ==
        doctest::Approx(1.25).epsilon(1e-15));
  CHECK(theils_u(pair({1, 2, 3}, {1, 2, 3})) == 0.0);
  CHECK_THROWS_AS(theils_u(pair({1, 2, 3}, {4, 4, 4})), ConstantOutputError);
}

TEST_CASE("evaluate_all composition") {
  // perfect forecast on a strictly monotone target
  const auto perfect = evaluate_all(pair({1, 2, 3, 4}, {1, 2, 3, 4}));
  CHECK(perfect.mse == 0.0);
  CHECK(perfect.rmse == 0.0);
  CHECK(perfect.mae == 0.0);
  CHECK(perfect.mape == 0.0);
  CHECK(perfect.theils_u == 0.0);
  CHECK(perfect.pocid == 100.0);

  const auto r = evaluate_all(pair({10, 12, 11}, {11, 11, 13}));
  CHECK(r.mse == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.theils_u == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(r.rmse * r.rmse == doctest::Approx(r.mse).epsilon(1e-9));

  CHECK_THROWS_AS(evaluate_all(pair({1, 2}, {1})), LengthMismatchError);
}

TEST_CASE("1000 random pairs match the naive oracles to 1e-12 relative") {
  std::mt19937_64 gen(20260809);
  std::uniform_int_distribution<std::size_t> len_dist(2, 50);
  std::uniform_real_distribution<double> val_dist(0.5, 100.0);

  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = len_dist(gen);
    std::vector<double> t(n), o(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = val_dist(gen);
      o[i] = val_dist(gen);
    }
    const auto p = pair(t, o);
    CHECK(testutil::rel_err(mse(p), testutil::oracle_mse(t, o)) < 1e-12);
    CHECK(testutil::rel_err(rmse(p), testutil::oracle_rmse(t, o)) < 1e-12);
    CHECK(testutil::rel_err(mae(p), testutil::oracle_mae(t, o)) < 1e-12);
    CHECK(testutil::rel_err(mape(p), testutil::oracle_mape(t, o, true)) < 1e-12);
    CHECK(testutil::rel_err(mape(p, MapeDenominator::Target),
                            testutil::oracle_mape(t, o, false)) < 1e-12);
    CHECK(testutil::rel_err(pocid(p), testutil::oracle_pocid(t, o)) < 1e-12);
    bool constant_output = true;
    for (std::size_t i = 1; i < n; ++i)
      if (o[i] != o[i - 1]) constant_output = false;
    if (!constant_output)
      CHECK(testutil::rel_err(theils_u(p), testutil::oracle_theils_u(t, o)) < 1e-12);
  }
}

TEST_CASE("scale equivariance and shift invariance") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> val_dist(1.0, 50.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> t(20), o(20);
    for (std::size_t i = 0; i < 20; ++i) {
      t[i] = val_dist(gen);
      o[i] = val_dist(gen);
    }
    const double c = 3.25;
    std::vector<double> tc = t, oc = o, ts = t, os_ = o;
    for (auto& v : tc) v *= c;
    for (auto& v : oc) v *= c;
    for (auto& v : ts) v += 17.5;
    for (auto& v : os_) v += 17.5;

    const auto base = pair(t, o), scaled = pair(tc, oc), shifted = pair(ts, os_);
    CHECK(testutil::rel_err(mae(scaled), c * mae(base)) < 1e-9);
    CHECK(testutil::rel_err(rmse(scaled), c * rmse(base)) < 1e-9);
    CHECK(testutil::rel_err(mse(scaled), c * c * mse(base)) < 1e-9);
    CHECK(testutil::rel_err(mape(scaled), mape(base)) < 1e-9);
    CHECK(pocid(scaled) == pocid(base));
    CHECK(testutil::rel_err(theils_u(scaled), theils_u(base)) < 1e-9);

    CHECK(testutil::rel_err(mse(shifted), mse(base)) < 1e-9);
    CHECK(testutil::rel_err(rmse(shifted), rmse(base)) < 1e-9);
    CHECK(testutil::rel_err(mae(shifted), mae(base)) < 1e-9);
    CHECK(pocid(shifted) == pocid(base));
    CHECK(testutil::rel_err(theils_u(shifted), theils_u(base)) < 1e-9);
    CHECK(mape(shifted) != mape(base));  // mape is scale-relative

    CHECK(pocid(base) >= 0.0);
    CHECK(pocid(base) <= 100.0);
    CHECK(theils_u(base) >= 0.0);
  }
}
