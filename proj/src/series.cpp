// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsbench/errors.hpp"

namespace tsbench {

Series make_series(std::vector<Date> timestamps, std::vector<double> values,
                   std::string name) {
  if (timestamps.size() != values.size())
    throw LengthMismatchError("series: " + std::to_string(timestamps.size()) +
                              " timestamps vs " + std::to_string(values.size()) +
                              " values");
  if (values.empty()) throw EmptyAfterCleaningError("series is empty");
  for (double v : values)
    if (!std::isfinite(v))
      throw InvalidArgumentError("series contains a non-finite value");
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (timestamps[i] == timestamps[i - 1])
      throw DuplicateDateError("duplicate date " + timestamps[i].iso());
    if (timestamps[i] < timestamps[i - 1])
      throw InvalidArgumentError("timestamps not increasing at " +
                                 timestamps[i].iso());
  }
  return Series{std::move(timestamps), std::move(values), std::move(name)};
}

std::pair<Series, Series> split(const Series& series, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction <= 1.0))
    throw InvalidArgumentError("train_fraction must lie in (0, 1]");
  if (!(spec.boundary >= series.first_date() &&
        spec.boundary < series.last_date()))
    throw BoundaryOutOfRangeError("split boundary " + spec.boundary.iso() +
                                  " outside series range " +
                                  series.first_date().iso() + ".." +
                                  series.last_date().iso());

  const auto cut = std::upper_bound(series.timestamps.begin(),
                                    series.timestamps.end(), spec.boundary);
  const std::size_t n_train_full =
      static_cast<std::size_t>(cut - series.timestamps.begin());
  if (n_train_full == 0 || n_train_full == series.size())
    throw EmptyPartitionError("split produced an empty partition");

  const auto n_keep = static_cast<std::size_t>(
      std::ceil(spec.train_fraction * static_cast<double>(n_train_full)));
  const std::size_t start = n_train_full - std::max<std::size_t>(n_keep, 1);

  Series train{{series.timestamps.begin() + static_cast<std::ptrdiff_t>(start),
                series.timestamps.begin() + static_cast<std::ptrdiff_t>(n_train_full)},
               {series.values.begin() + static_cast<std::ptrdiff_t>(start),
                series.values.begin() + static_cast<std::ptrdiff_t>(n_train_full)},
               series.name};
  Series test{{series.timestamps.begin() + static_cast<std::ptrdiff_t>(n_train_full),
               series.timestamps.end()},
              {series.values.begin() + static_cast<std::ptrdiff_t>(n_train_full),
               series.values.end()},
              series.name};
  return {std::move(train), std::move(test)};
}

WindowSet make_windows(const Series& series, int context_len, int horizon,
                       int stride) {
  if (context_len < 1 || horizon < 1 || stride < 1)
    throw InvalidArgumentError("context_len, horizon and stride must be >= 1");
  const std::size_t need =
      static_cast<std::size_t>(context_len) + static_cast<std::size_t>(horizon);
  if (series.size() < need)
    throw SeriesTooShortError("make_windows: need at least " +
                              std::to_string(need) + " observations, have " +
                              std::to_string(series.size()));

  WindowSet out;
  out.context_len = context_len;
  out.horizon = horizon;
  for (std::size_t origin = 0; origin + need <= series.size();
       origin += static_cast<std::size_t>(stride)) {
    Window w;
    w.origin = origin;
    w.context.assign(series.values.begin() + static_cast<std::ptrdiff_t>(origin),
                     series.values.begin() +
                         static_cast<std::ptrdiff_t>(origin + context_len));
    w.target.assign(series.values.begin() +
                        static_cast<std::ptrdiff_t>(origin + context_len),
                    series.values.begin() + static_cast<std::ptrdiff_t>(origin + need));
    out.windows.push_back(std::move(w));
  }
  return out;
}

std::pair<Series, Series> rolling_stats(const Series& series, int window) {
  if (window < 1) throw InvalidArgumentError("window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  if (series.size() < w)
    throw SeriesTooShortError("rolling_stats: series shorter than window");

  const std::size_t n_out = series.size() - w + 1;
  std::vector<double> means(n_out), stds(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    double sum = 0.0;
    for (std::size_t j = i; j < i + w; ++j) sum += series.values[j];
    const double mean = sum / static_cast<double>(w);
    double ss = 0.0;
    for (std::size_t j = i; j < i + w; ++j) {
      const double dev = series.values[j] - mean;
      ss += dev * dev;
    }
    means[i] = mean;
    stds[i] = (w > 1) ? std::sqrt(ss / static_cast<double>(w - 1)) : 0.0;
  }
  std::vector<Date> dates(series.timestamps.begin() +
                              static_cast<std::ptrdiff_t>(w - 1),
                          series.timestamps.end());
  Series mean_series{dates, std::move(means), series.name + "_rolling_mean"};
  Series std_series{std::move(dates), std::move(stds),
                    series.name + "_rolling_std"};
  return {std::move(mean_series), std::move(std_series)};
}

namespace {

std::vector<double> lag_diff(const std::vector<double>& x, std::size_t lag) {
  std::vector<double> out(x.size() - lag);
  for (std::size_t i = lag; i < x.size(); ++i) out[i - lag] = x[i] - x[i - lag];
  return out;
}

}  // namespace

std::vector<double> difference(const std::vector<double>& values, int d, int D,
                               int m) {
  if (d < 0 || D < 0 || m < 1)
    throw InvalidArgumentError("difference: d, D must be >= 0 and m >= 1");
  const std::size_t drop =
      static_cast<std::size_t>(d) + static_cast<std::size_t>(D) * m;
  if (values.size() <= drop)
    throw SeriesTooShortError("difference: need more than " +
                              std::to_string(drop) + " observations");
  std::vector<double> out = values;
  for (int k = 0; k < D; ++k) out = lag_diff(out, static_cast<std::size_t>(m));
  for (int k = 0; k < d; ++k) out = lag_diff(out, 1);
  return out;
}

Series difference(const Series& series, int d, int D, int m) {
  std::vector<double> vals = difference(series.values, d, D, m);
  std::vector<Date> dates(series.timestamps.end() -
                              static_cast<std::ptrdiff_t>(vals.size()),
                          series.timestamps.end());
  return Series{std::move(dates), std::move(vals), series.name + "_diff"};
}

std::vector<double> integrate_forecast(const std::vector<double>& history,
                                       const std::vector<double>& diffed_future,
                                       int d, int D, int m) {
  const std::size_t need =
      static_cast<std::size_t>(d) + static_cast<std::size_t>(D) * m;
  if (history.size() < std::max<std::size_t>(need, 1))
    throw SeriesTooShortError("integrate_forecast: history too short");
  if (d == 0 && D == 0) return diffed_future;

  // Seasonal-level history and its ordinary-difference ladder.
  std::vector<double> seasonal_hist = history;
  for (int k = 0; k < D; ++k)
    seasonal_hist = lag_diff(seasonal_hist, static_cast<std::size_t>(m));

  std::vector<std::vector<double>> ladder(static_cast<std::size_t>(d) + 1);
  ladder[0] = seasonal_hist;
  for (int j = 1; j <= d; ++j)
    ladder[static_cast<std::size_t>(j)] =
        lag_diff(ladder[static_cast<std::size_t>(j - 1)], 1);

  // Undo ordinary differences via running sums anchored at each level's tail.
  std::vector<double> cur = diffed_future;
  for (int j = d - 1; j >= 0; --j) {
    double last = ladder[static_cast<std::size_t>(j)].back();
    for (double& v : cur) {
      last += v;
      v = last;
    }
  }

  // Undo seasonal differences against each seasonal level's last m values.
  std::vector<std::vector<double>> seasonal_levels(static_cast<std::size_t>(D) + 1);
  seasonal_levels[0] = history;
  for (int k = 1; k <= D; ++k)
    seasonal_levels[static_cast<std::size_t>(k)] =
        lag_diff(seasonal_levels[static_cast<std::size_t>(k - 1)],
                 static_cast<std::size_t>(m));
  for (int k = D - 1; k >= 0; --k) {
    const auto& base = seasonal_levels[static_cast<std::size_t>(k)];
    std::vector<double> out(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double prior = (i < static_cast<std::size_t>(m))
                               ? base[base.size() - static_cast<std::size_t>(m) + i]
                               : out[i - static_cast<std::size_t>(m)];
      out[i] = cur[i] + prior;
    }
    cur = std::move(out);
  }
  return cur;
}

std::vector<double> integrate(const std::vector<double>& diffed,
                              const std::vector<double>& initial, int d, int D,
                              int m) {
  const std::size_t need =
      static_cast<std::size_t>(d) + static_cast<std::size_t>(D) * m;
  if (initial.size() != need)
    throw InvalidArgumentError("integrate: expected " + std::to_string(need) +
                               " initial values, got " +
                               std::to_string(initial.size()));
  if (need == 0) return diffed;
  std::vector<double> out = initial;
  const std::vector<double> tail = integrate_forecast(initial, diffed, d, D, m);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace tsbench
