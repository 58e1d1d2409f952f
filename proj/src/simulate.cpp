// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/simulate.hpp"

#include <cmath>

#include "tsbench/rng.hpp"

namespace tsbench::sim {

std::vector<Date> business_days(std::size_t n, Date start) {
  std::vector<Date> out;
  out.reserve(n);
  Date d = start;
  while (d.weekday() == 0 || d.weekday() == 6) d = d.next_business_day();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(d);
    d = d.next_business_day();
  }
  return out;
}

Series white_noise(std::size_t n, std::uint64_t seed, double mean, double sigma) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal(mean, sigma);
  return make_series(business_days(n), std::move(v), "whitenoise");
}

Series random_walk(std::size_t n, std::uint64_t seed, double drift, double sigma,
                   double start_value) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  double level = start_value;
  for (double& x : v) {
    level += drift + rng.normal(0.0, sigma);
    x = level;
  }
  return make_series(business_days(n), std::move(v), "randomwalk");
}

Series ar1(std::size_t n, std::uint64_t seed, double phi, double sigma,
           double mean) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  double prev = 0.0;
  // burn in from the stationary start
  for (int i = 0; i < 50; ++i) prev = phi * prev + rng.normal(0.0, sigma);
  for (double& x : v) {
    prev = phi * prev + rng.normal(0.0, sigma);
    x = mean + prev;
  }
  return make_series(business_days(n), std::move(v), "ar1");
}

Series ma1(std::size_t n, std::uint64_t seed, double theta, double sigma,
           double mean) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  double e_prev = rng.normal(0.0, sigma);
  for (double& x : v) {
    const double e = rng.normal(0.0, sigma);
    x = mean + e + theta * e_prev;
    e_prev = e;
  }
  return make_series(business_days(n), std::move(v), "ma1");
}

Series arima011(std::size_t n, std::uint64_t seed, double theta, double sigma,
                double start_value) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  double level = start_value;
  double e_prev = rng.normal(0.0, sigma);
  for (double& x : v) {
    const double e = rng.normal(0.0, sigma);
    level += e + theta * e_prev;
    e_prev = e;
    x = level;
  }
  return make_series(business_days(n), std::move(v), "arima011");
}

Series sarma_q1_Q1(std::size_t n, std::uint64_t seed, double theta, double Theta,
                   int m, double sigma) {
  rng::Rng rng(seed);
  const std::size_t lag = static_cast<std::size_t>(m) + 1;
  std::vector<double> e(n + lag);
  for (double& x : e) x = rng.normal(0.0, sigma);
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t i = t + lag;
    v[t] = e[i] + theta * e[i - 1] + Theta * e[i - static_cast<std::size_t>(m)] +
           theta * Theta * e[i - lag];
  }
  return make_series(business_days(n), std::move(v), "sarma");
}

Series sine(std::size_t n, std::uint64_t seed, double period, double amplitude,
            double offset, double noise) {
  rng::Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    v[t] = offset +
           amplitude * std::sin(2.0 * 3.14159265358979323846 *
                                static_cast<double>(t) / period);
    if (noise > 0.0) v[t] += rng.normal(0.0, noise);
  }
  return make_series(business_days(n), std::move(v), "sine");
}

Series synthetic_index(std::uint64_t seed, std::size_t n) {
  return random_walk(n, seed, 4.0, 60.0, 6000.0);
}

}  // namespace tsbench::sim
