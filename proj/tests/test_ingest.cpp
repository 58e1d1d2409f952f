// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "testutil.hpp"
#include "tsbench/adf.hpp"
#include "tsbench/csv.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/series.hpp"
#include "tsbench/simulate.hpp"

using namespace tsbench;

namespace {

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& content) {
    static int counter = 0;
    path = "tsbench_test_" + std::to_string(counter++) + ".csv";
    std::ofstream os(path);
    os << content;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("date parsing accepts ISO and DD-MM-YYYY") {
  CHECK(Date::parse("2011-01-03") == Date{2011, 1, 3});
  CHECK(Date::parse("03-01-2011") == Date{2011, 1, 3});
  CHECK(Date::parse("03/01/2011") == Date{2011, 1, 3});
  CHECK_THROWS_AS(Date::parse("2011-13-03"), UnparseableDateError);
  CHECK_THROWS_AS(Date::parse("2011-02-30"), UnparseableDateError);
  CHECK_THROWS_AS(Date::parse("notadate"), UnparseableDateError);
  CHECK(Date{2020, 2, 29}.iso() == "2020-02-29");  // leap year
  CHECK(Date::parse("2011-01-03").weekday() == 1);  // a Monday
}

TEST_CASE("load_csv echoes a 3-row file in date order") {
  TempCsv file(
      "Date,Close\n"
      "2011-01-03,6157.60\n"
      "2011-01-04,6146.35\n"
      "2011-01-05,6079.80\n");
  LoadSummary summary;
  const Series s = load_csv(file.path, "Close", "Date", &summary);
  REQUIRE(s.size() == 3);
  CHECK(s.values[0] == doctest::Approx(6157.60));
  CHECK(s.values[2] == doctest::Approx(6079.80));
  CHECK(s.timestamps[0] < s.timestamps[1]);
  CHECK(summary.rows_read == 3);
  CHECK(summary.rows_dropped == 0);
}

TEST_CASE("load_csv drops blank value cells and counts them") {
  std::string content = "Date,Close\n";
  for (int d = 3; d <= 12; ++d) {
    content += "2011-01-" + std::string(d < 10 ? "0" : "") + std::to_string(d);
    content += d == 7 ? ",\n" : ",100.5\n";
  }
  TempCsv file(content);
  LoadSummary summary;
  const Series s = load_csv(file.path, "Close", "Date", &summary);
  CHECK(s.size() == 9);
  CHECK(summary.rows_read == 10);
  CHECK(summary.rows_dropped == 1);
  CHECK(summary.rows_kept == 9);
}

TEST_CASE("load_csv rejects duplicate dates") {
  TempCsv file(
      "Date,Close\n"
      "2011-01-03,1\n"
      "2011-01-03,2\n");
  CHECK_THROWS_AS(load_csv(file.path), DuplicateDateError);
}

TEST_CASE("load_csv error paths") {
  TempCsv missing("Date,Open\n2011-01-03,1\n");
  CHECK_THROWS_AS(load_csv(missing.path, "Close", "Date"), MissingColumnError);
  TempCsv baddate("Date,Close\nxx-yy,1\n");
  CHECK_THROWS_AS(load_csv(baddate.path), UnparseableDateError);
  TempCsv allblank("Date,Close\n2011-01-03,\n");
  CHECK_THROWS_AS(load_csv(allblank.path), EmptyAfterCleaningError);
  // unsorted input gets sorted
  TempCsv unsorted("Date,Close\n2011-01-05,2\n2011-01-03,1\n");
  LoadSummary summary;
  const Series s = load_csv(unsorted.path, "Close", "Date", &summary);
  CHECK(s.values.front() == 1.0);
  CHECK(summary.sorted_on_load);
}

TEST_CASE("split keeps the most recent fraction and a fixed test set") {
  std::vector<double> values(100);
  for (std::size_t i = 0; i < 100; ++i) values[i] = static_cast<double>(i + 1);
  const Series s = testutil::series_of(values);
  const Date boundary = s.timestamps[79];

  auto [train_full, test_full] = split(s, {boundary, 1.0});
  CHECK(train_full.size() == 80);
  CHECK(test_full.size() == 20);
  CHECK(train_full.values.front() == 1.0);

  auto [train_half, test_half] = split(s, {boundary, 0.5});
  CHECK(train_half.size() == 40);
  CHECK(train_half.values.front() == 41.0);  // most recent half
  CHECK(train_half.values.back() == 80.0);

  auto [train_q, test_q] = split(s, {boundary, 0.25});
  CHECK(train_q.size() == 20);
  CHECK(train_q.values.front() == 61.0);

  // test partitions are bit-identical across fractions
  CHECK(test_half.values == test_full.values);
  CHECK(test_q.values == test_full.values);
  CHECK(test_half.timestamps == test_full.timestamps);
  CHECK(test_q.timestamps == test_full.timestamps);
}

TEST_CASE("split error paths") {
  const Series s = testutil::series_of({1, 2, 3, 4, 5});
  CHECK_THROWS_AS(split(s, {Date{2030, 1, 1}, 1.0}), BoundaryOutOfRangeError);
  CHECK_THROWS_AS(split(s, {Date{1999, 1, 1}, 1.0}), BoundaryOutOfRangeError);
  CHECK_THROWS_AS(split(s, {s.timestamps[2], 0.0}), InvalidArgumentError);
  // boundary at the last date leaves an empty test partition
  CHECK_THROWS_AS(split(s, {s.timestamps[4], 1.0}), BoundaryOutOfRangeError);
}

TEST_CASE("make_windows basic counts") {
  std::vector<double> v(12);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);

  const auto ws = make_windows(testutil::series_of(v), 5, 5, 1);
  REQUIRE(ws.size() == 3);
  CHECK(ws.windows[0].origin == 0);
  CHECK(ws.windows[1].origin == 1);
  CHECK(ws.windows[2].origin == 2);
  CHECK(ws.windows[0].context == std::vector<double>{0, 1, 2, 3, 4});
  CHECK(ws.windows[0].target == std::vector<double>{5, 6, 7, 8, 9});

  std::vector<double> v10(10, 1.0);
  CHECK(make_windows(testutil::series_of(v10), 5, 5).size() == 1);

  std::vector<double> v9(9, 1.0);
  CHECK_THROWS_AS(make_windows(testutil::series_of(v9), 5, 5), SeriesTooShortError);
}

TEST_CASE("make_windows count formula by exhaustive enumeration, N <= 30") {
  for (std::size_t n = 2; n <= 30; ++n) {
    std::vector<double> v(n, 1.0);
    const Series s = testutil::series_of(v);
    for (int c = 1; c <= 6; ++c)
      for (int h = 1; h <= 6; ++h)
        for (int stride = 1; stride <= 3; ++stride) {
          if (n < static_cast<std::size_t>(c + h)) continue;
          const auto ws = make_windows(s, c, h, stride);
          // count positions origin = 0, stride, 2*stride ... with
          // origin + c + h <= n
          std::size_t want = 0;
          for (std::size_t o = 0; o + static_cast<std::size_t>(c + h) <= n;
               o += static_cast<std::size_t>(stride))
            ++want;
          CHECK(ws.size() == want);
          if (stride == 1)
            CHECK(ws.size() == n - static_cast<std::size_t>(c + h) + 1);
          for (const auto& w : ws.windows) {
            CHECK(w.context.size() == static_cast<std::size_t>(c));
            CHECK(w.target.size() == static_cast<std::size_t>(h));
          }
        }
  }
}

TEST_CASE("rolling_stats hand cases") {
  // constant series
  const auto [m_const, s_const] =
      rolling_stats(testutil::series_of(std::vector<double>(15, 5.0)), 10);
  CHECK(m_const.size() == 6);
  for (double v : m_const.values) CHECK(v == doctest::Approx(5.0));
  for (double v : s_const.values) CHECK(v == doctest::Approx(0.0));

  // values 1..10 in a window of 10: mean 5.5, sample std sqrt(82.5/9)
  std::vector<double> ramp(10);
  for (std::size_t i = 0; i < 10; ++i) ramp[i] = static_cast<double>(i + 1);
  const auto [m_ramp, s_ramp] = rolling_stats(testutil::series_of(ramp), 10);
  REQUIRE(m_ramp.size() == 1);
  CHECK(m_ramp.values[0] == doctest::Approx(5.5).epsilon(1e-15));
  CHECK(s_ramp.values[0] == doctest::Approx(3.0276503540974917).epsilon(1e-12));

  // alignment to window end dates
  const Series src = testutil::series_of(ramp);
  CHECK(m_ramp.timestamps[0] == src.timestamps[9]);

  CHECK_THROWS_AS(rolling_stats(testutil::series_of({1, 2, 3}), 10),
                  SeriesTooShortError);
}

TEST_CASE("difference hand cases") {
  CHECK(difference(std::vector<double>{1, 3, 6, 10}, 1) ==
        std::vector<double>{2, 3, 4});
  CHECK(difference(std::vector<double>{4, 7, 1}, 0) ==
        std::vector<double>{4, 7, 1});
  CHECK(difference(std::vector<double>{1, 2, 3, 4, 5, 6}, 0, 1, 3) ==
        std::vector<double>{3, 3, 3});
  CHECK_THROWS_AS(difference(std::vector<double>{1, 2}, 2), SeriesTooShortError);

  // Series overload keeps the trailing dates
  const Series s = testutil::series_of({1, 3, 6, 10});
  const Series d = difference(s, 1);
  CHECK(d.size() == 3);
  CHECK(d.timestamps.front() == s.timestamps[1]);
}

TEST_CASE("difference then integrate round-trips to 1e-9 relative") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> val(50.0, 150.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int d = static_cast<int>(gen() % 3);
    const int D = static_cast<int>(gen() % 2);
    const int m = 2 + static_cast<int>(gen() % 6);
    const std::size_t n = 30 + gen() % 40;
    if (n <= static_cast<std::size_t>(d + D * m)) continue;
    std::vector<double> y(n);
    for (double& v : y) v = val(gen);

    const auto diffed = difference(y, d, D, m);
    const std::size_t keep = static_cast<std::size_t>(d + D * m);
    const std::vector<double> initial(y.begin(),
                                      y.begin() + static_cast<std::ptrdiff_t>(keep));
    const auto rebuilt = integrate(diffed, initial, d, D, m);
    REQUIRE(rebuilt.size() == y.size());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(testutil::rel_err(rebuilt[i], y[i]) < 1e-9);
  }
}

TEST_CASE("adf_test rejects white noise and retains random walks (smoke)") {
  const Series noise = sim::white_noise(500, 42);
  CHECK(adf_test(noise).is_stationary);

  const Series walk = sim::random_walk(500, 42);
  CHECK_FALSE(adf_test(walk).is_stationary);
}

TEST_CASE("adf_test statistic is shift invariant") {
  const Series walk = sim::random_walk(300, 11);
  std::vector<double> shifted = walk.values;
  for (double& v : shifted) v += 1234.5;
  const Series walk_shifted =
      make_series(walk.timestamps, std::move(shifted), "shifted");
  const auto a = adf_test(walk);
  const auto b = adf_test(walk_shifted);
  CHECK(std::fabs(a.adf_statistic - b.adf_statistic) < 1e-8);
  CHECK(a.lag_order == b.lag_order);
}

TEST_CASE("adf_test on a constant series raises SingularRegression") {
  const Series flat = testutil::series_of(std::vector<double>(50, 3.0));
  CHECK_THROWS_AS(adf_test(flat), SingularRegressionError);
}

TEST_CASE("adf_test report invariants") {
  const Series walk = sim::random_walk(200, 3);
  const auto report = adf_test(walk);
  CHECK(report.critical_values.at(0.05) == doctest::Approx(-2.86));
  CHECK(report.is_stationary ==
        (report.adf_statistic < report.critical_values.at(0.05)));
  CHECK(report.rolling_mean.size() == walk.size() - 10 + 1);
  CHECK(report.rolling_std.size() == walk.size() - 10 + 1);
  CHECK_THROWS_AS(adf_test(testutil::series_of({1, 2, 3}), 5), SeriesTooShortError);
}

TEST_CASE("monte-carlo: ADF size and power at the 5% level (reduced reps)") {
  // Full 100-replication harness runs in the acceptance suite; this is a
  // faster regression guard.
  int retained = 0;
  for (int rep = 0; rep < 25; ++rep)
    if (!adf_test(sim::random_walk(500, 1000 + static_cast<unsigned>(rep)))
             .is_stationary)
      ++retained;
  CHECK(retained >= 21);  // >= 90% of 25, with slack for the small sample

  int rejected = 0;
  for (int rep = 0; rep < 25; ++rep)
    if (adf_test(sim::white_noise(500, 2000 + static_cast<unsigned>(rep)))
            .is_stationary)
      ++rejected;
  CHECK(rejected >= 24);
}
