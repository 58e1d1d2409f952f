// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "tsbench/series.hpp"

namespace tsbench::sim {

inline constexpr Date kDefaultStart{2011, 1, 3};

/// Business-day date axis of length n starting at `start`.
std::vector<Date> business_days(std::size_t n, Date start = kDefaultStart);

Series white_noise(std::size_t n, std::uint64_t seed, double mean = 0.0,
                   double sigma = 1.0);

Series random_walk(std::size_t n, std::uint64_t seed, double drift = 0.0,
                   double sigma = 1.0, double start_value = 0.0);

/// Stationary AR(1): y_t = mean + phi*(y_{t-1} - mean) + e_t.
Series ar1(std::size_t n, std::uint64_t seed, double phi = 0.7,
           double sigma = 1.0, double mean = 0.0);

/// MA(1): y_t = mean + e_t + theta*e_{t-1}.
Series ma1(std::size_t n, std::uint64_t seed, double theta = 0.6,
           double sigma = 1.0, double mean = 0.0);

/// ARIMA(0,1,1): cumulative sum of an MA(1).
Series arima011(std::size_t n, std::uint64_t seed, double theta = 0.6,
                double sigma = 1.0, double start_value = 100.0);

/// SARMA(0,0,1)(0,0,1)_m: y_t = e_t + theta*e_{t-1} + Theta*e_{t-m}
///                              + theta*Theta*e_{t-m-1}.
Series sarma_q1_Q1(std::size_t n, std::uint64_t seed, double theta,
                   double Theta, int m, double sigma = 1.0);

/// offset + amplitude * sin(2*pi*t/period) + noise.
Series sine(std::size_t n, std::uint64_t seed, double period = 20.0,
            double amplitude = 1.0, double offset = 10.0, double noise = 0.0);

/// 2500-point index-like random walk with drift used by the bench protocol.
Series synthetic_index(std::uint64_t seed, std::size_t n = 2500);

}  // namespace tsbench::sim
