// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/metrics.hpp"

#include <cmath>
#include <string>

#include "tsbench/errors.hpp"

namespace tsbench::metrics {

namespace {

void check(const AlignedPair& pair, std::size_t min_len) {
  if (pair.target.size() != pair.output.size())
    throw LengthMismatchError("aligned pair: " + std::to_string(pair.target.size()) +
                              " targets vs " + std::to_string(pair.output.size()) +
                              " outputs");
  if (pair.target.size() < min_len)
    throw SeriesTooShortError("metric needs at least " + std::to_string(min_len) +
                              " points, got " + std::to_string(pair.target.size()));
  for (std::size_t i = 0; i < pair.target.size(); ++i)
    if (!std::isfinite(pair.target[i]) || !std::isfinite(pair.output[i]))
      throw InvalidArgumentError("non-finite value at index " + std::to_string(i));
}

}  // namespace

double mse(const AlignedPair& pair) {
  check(pair, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.target.size(); ++i) {
    const double e = pair.target[i] - pair.output[i];
    acc += e * e;
  }
  return acc / static_cast<double>(pair.target.size());
}

double rmse(const AlignedPair& pair) { return std::sqrt(mse(pair)); }

double mae(const AlignedPair& pair) {
  check(pair, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.target.size(); ++i)
    acc += std::abs(pair.target[i] - pair.output[i]);
  return acc / static_cast<double>(pair.target.size());
}

double mape(const AlignedPair& pair, MapeDenominator denominator) {
  check(pair, 1);
  const std::vector<double>& denom =
      denominator == MapeDenominator::Output ? pair.output : pair.target;
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.target.size(); ++i) {
    if (denom[i] == 0.0)
      throw ZeroDenominatorError("mape: zero denominator at index " +
                                 std::to_string(i));
    acc += std::abs(pair.target[i] - pair.output[i]) / std::abs(denom[i]);
  }
  return 100.0 * acc / static_cast<double>(pair.target.size());
}

double pocid(const AlignedPair& pair) {
  check(pair, 2);
  const std::size_t n = pair.target.size();
  std::size_t correct = 0;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const double d_target = pair.target[t] - pair.target[t + 1];
    const double d_output = pair.output[t] - pair.output[t + 1];
    if (d_target * d_output > 0.0) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(n - 1);
}

double theils_u(const AlignedPair& pair) {
  check(pair, 2);
  const std::size_t n = pair.target.size();
  double num = 0.0, den = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double e = pair.target[t] - pair.output[t];
    num += e * e;
    const double step = pair.output[t] - pair.output[t - 1];
    den += step * step;
  }
  if (den == 0.0)
    throw ConstantOutputError("theils_u: output has no successive change");
  return num / den;
}

MetricReport evaluate_all(const AlignedPair& pair, MapeDenominator denominator) {
  MetricReport r;
  r.mse = mse(pair);
  r.rmse = std::sqrt(r.mse);
  r.mae = mae(pair);
  r.mape = mape(pair, denominator);
  r.pocid = pocid(pair);
  r.theils_u = theils_u(pair);
  return r;
}

}  // namespace tsbench::metrics
