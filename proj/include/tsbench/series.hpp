// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tsbench/calendar.hpp"

namespace tsbench {

/// Univariate observation sequence on a strictly increasing date axis.
/// All values are finite; construction through make_series enforces this.
struct Series {
  std::vector<Date> timestamps;
  std::vector<double> values;
  std::string name;

  std::size_t size() const { return values.size(); }
  Date first_date() const { return timestamps.front(); }
  Date last_date() const { return timestamps.back(); }
};

/// Validates invariants (ascending unique dates, finite values, length >= 1)
/// and returns the assembled series. Throws on violation.
Series make_series(std::vector<Date> timestamps, std::vector<double> values,
                   std::string name = "series");

struct SplitSpec {
  Date boundary;                 // train covers dates <= boundary
  double train_fraction = 1.0;   // in (0, 1]; keeps the most recent slice
};

/// Splits into (train, test). Train is every observation dated <= boundary,
/// truncated to the most recent ceil(train_fraction * len) observations;
/// test is every observation dated > boundary and is independent of the
/// fraction.
std::pair<Series, Series> split(const Series& series, const SplitSpec& spec);

struct Window {
  std::vector<double> context;
  std::vector<double> target;
  std::size_t origin = 0;  // index of the first context element in the source
};

struct WindowSet {
  int context_len = 5;
  int horizon = 5;
  std::vector<Window> windows;

  std::size_t size() const { return windows.size(); }
  int window_len() const { return context_len + horizon; }
};

/// Supervised (context, target) pairs cut left-to-right at the given stride.
/// Window count for stride 1 is N - context_len - horizon + 1.
WindowSet make_windows(const Series& series, int context_len, int horizon,
                       int stride = 1);

/// Rolling mean and sample standard deviation (divisor window-1), each of
/// length N - window + 1 and aligned to window end dates.
std::pair<Series, Series> rolling_stats(const Series& series, int window);

/// Applies D seasonal differences at lag m, then d ordinary differences.
/// Output length is N - d - D*m; dates are the trailing dates of the input.
Series difference(const Series& series, int d, int D = 0, int m = 1);
std::vector<double> difference(const std::vector<double>& values, int d,
                               int D = 0, int m = 1);

/// Inverse of difference(). `initial` must be the first d + D*m values of
/// the original sequence; returns the full reconstructed sequence.
std::vector<double> integrate(const std::vector<double>& diffed,
                              const std::vector<double>& initial, int d,
                              int D = 0, int m = 1);

/// Continues an already-differenced sequence: given the undifferenced
/// history and future values on the differenced scale, reconstructs the
/// future values on the original scale.
std::vector<double> integrate_forecast(const std::vector<double>& history,
                                       const std::vector<double>& diffed_future,
                                       int d, int D = 0, int m = 1);

}  // namespace tsbench
