// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "testutil.hpp"
#include "tsbench/bench.hpp"
#include "tsbench/csv.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/simulate.hpp"

using namespace tsbench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("tsbench_bench_test_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

bool same_value(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// small, fast plan: one tiny rnn + a narrow arima grid
bench::ExperimentPlan tiny_plan(const Series& series) {
  bench::ExperimentPlan plan;
  plan.boundary = series.timestamps[series.size() - 31];
  plan.horizon = 15;
  plan.fractions = {1.0, 0.5};
  plan.seed = 7;

  bench::ArimaSpec arima;
  arima.p_grid = {0, 1};
  arima.q_grid = {0, 1};
  plan.models.push_back({"arima", arima});

  bench::NeuralSpec rnn;
  rnn.cell.kind = nn::CellKind::Rnn;
  rnn.cell.hidden_size = 4;
  rnn.train.epochs = 3;
  plan.models.push_back({"rnn", rnn});
  return plan;
}

}  // namespace

TEST_CASE("fnv1a64 known vectors") {
  CHECK(rng::fnv1a64("") == 14695981039346656037ull);
  CHECK(rng::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(rng::fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("fraction labels and cell seeds are canonical") {
  CHECK(bench::fraction_label(1.0) == "1");
  CHECK(bench::fraction_label(0.5) == "0.5");
  CHECK(bench::fraction_label(0.25) == "0.25");
  // derived exactly as fnv1a64("model|fraction|seed")
  CHECK(bench::cell_seed(42, "lstm", 0.5) == rng::fnv1a64("lstm|0.5|42"));
  CHECK(bench::cell_seed(42, "lstm", 0.5) != bench::cell_seed(42, "lstm", 0.25));
  CHECK(bench::cell_seed(42, "lstm", 0.5) != bench::cell_seed(43, "lstm", 0.5));
}

TEST_CASE("day_of_week_exog drops Monday as reference") {
  // 2011-01-03 was a Monday
  const auto dates = sim::business_days(10);
  const auto cols = bench::day_of_week_exog(dates);
  REQUIRE(cols.size() == 4);
  for (const auto& col : cols) REQUIRE(col.size() == 10);
  // Monday rows are all zero
  for (std::size_t c = 0; c < 4; ++c) CHECK(cols[c][0] == 0.0);
  // Tuesday hits only the first column
  CHECK(cols[0][1] == 1.0);
  CHECK(cols[1][1] == 0.0);
  // one-hot: row sums are 1 except Mondays
  for (std::size_t i = 0; i < 10; ++i) {
    double sum = 0;
    for (const auto& col : cols) sum += col[i];
    CHECK(sum == (dates[i].weekday() == 1 ? 0.0 : 1.0));
  }
}

TEST_CASE("plan validation") {
  bench::ExperimentPlan plan;
  plan.models.push_back({"arima", bench::ArimaSpec{}});
  CHECK_NOTHROW(plan.validate());

  bench::ExperimentPlan empty_models = plan;
  empty_models.models.clear();
  CHECK_THROWS_AS(empty_models.validate(), ConfigError);

  bench::ExperimentPlan unsorted = plan;
  unsorted.fractions = {0.5, 1.0};
  CHECK_THROWS_AS(unsorted.validate(), ConfigError);

  bench::ExperimentPlan out_of_range = plan;
  out_of_range.fractions = {1.5};
  CHECK_THROWS_AS(out_of_range.validate(), ConfigError);

  bench::ExperimentPlan dup = plan;
  dup.models.push_back({"arima", bench::ArimaSpec{}});
  CHECK_THROWS_AS(dup.validate(), ConfigError);
}

TEST_CASE("run: one model, one fraction, one row") {
  const Series s = sim::synthetic_index(3, 200);
  bench::ExperimentPlan plan;
  plan.boundary = s.timestamps[s.size() - 21];
  plan.horizon = 10;
  plan.fractions = {1.0};
  bench::ArimaSpec arima;
  arima.p_grid = {0};
  arima.q_grid = {0, 1};
  plan.models.push_back({"arima", arima});

  const auto result = bench::run(plan, s);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].model == "arima");
  CHECK(result.rows[0].mode == "direct");
  CHECK_FALSE(result.rows[0].failed);
  CHECK(result.rows[0].wall_seconds >= 0.0);
  CHECK(result.test_actuals.size() == 10);
  CHECK(result.forecasts.count("arima|1") == 1);
  CHECK(result.forecasts.at("arima|1").point.size() == 10);
  // a flat classical forecast has no Theil's U; the cell survives with a note
  if (std::isnan(result.rows[0].report.theils_u))
    CHECK(result.rows[0].detail.find("theils_u undefined") != std::string::npos);
  CHECK(std::isfinite(result.rows[0].report.mse));
}

TEST_CASE("run: recurrent models add a windowed row; failures become rows") {
  const Series s = sim::synthetic_index(5, 200);
  auto plan = tiny_plan(s);
  const auto result = bench::run(plan, s, 2);

  // fractions x models, one direct row each, plus windowed for the rnn
  REQUIRE(result.rows.size() == 2 * 3);
  std::size_t direct = 0, windowed = 0;
  for (const auto& row : result.rows) {
    if (row.mode == "direct") ++direct;
    if (row.mode == "windowed") ++windowed;
    CHECK_FALSE(row.failed);
  }
  CHECK(direct == 4);
  CHECK(windowed == 2);

  // a horizon longer than the test set is a plan-level defect
  auto bad = plan;
  bad.horizon = 1000;
  CHECK_THROWS_AS(bench::run(bad, s), InvalidArgumentError);

  // a fraction that starves the models of data fails per cell; run continues
  auto starved = plan;
  starved.fractions = {1.0, 0.04};
  const auto partial = bench::run(starved, s);
  CHECK(partial.any_failed());
  std::size_t ok_rows = 0, failed_rows = 0;
  for (const auto& row : partial.rows) {
    if (row.failed) {
      ++failed_rows;
      CHECK_FALSE(row.error.empty());
      CHECK(row.fraction == 0.04);
    } else {
      ++ok_rows;
    }
  }
  CHECK(ok_rows >= 3);      // the 1.0 cells survive
  CHECK(failed_rows >= 2);  // both 0.04 cells fail (arima + rnn rows)
}

TEST_CASE("run twice: emitted artifacts are byte-identical") {
  const Series s = sim::synthetic_index(11, 200);
  const auto plan = tiny_plan(s);

  TempDir a, b;
  const auto r1 = bench::run(plan, s, 2);
  bench::emit_reports(r1, a.path.string());
  const auto r2 = bench::run(plan, s, 1);  // different job count on purpose
  bench::emit_reports(r2, b.path.string());

  CHECK(read_file(a.path / "metrics.csv") == read_file(b.path / "metrics.csv"));
  CHECK(read_file(a.path / "metrics.md") == read_file(b.path / "metrics.md"));
  for (const char* metric : {"mse", "rmse", "mae", "mape", "pocid", "theils_u"})
    CHECK(read_file(a.path / "plots" / (std::string(metric) + ".dat")) ==
          read_file(b.path / "plots" / (std::string(metric) + ".dat")));
  CHECK(read_file(a.path / "forecasts" / "arima_1.csv") ==
        read_file(b.path / "forecasts" / "arima_1.csv"));
  CHECK(read_file(a.path / "forecasts" / "rnn_0.5.csv") ==
        read_file(b.path / "forecasts" / "rnn_0.5.csv"));
}

TEST_CASE("test-segment identity: every cell sees the same actuals") {
  const Series s = sim::synthetic_index(13, 220);
  auto plan = tiny_plan(s);
  plan.fractions = {1.0, 0.5, 0.25};
  const auto result = bench::run(plan, s);

  // the fixed test head recomputed per fraction must be byte-identical
  for (double f : plan.fractions) {
    auto [train, test] = split(s, SplitSpec{plan.boundary, f});
    const std::vector<double> head(test.values.begin(),
                                   test.values.begin() + plan.horizon);
    CHECK(head == result.test_actuals);
  }
}

TEST_CASE("emit_reports: empty result writes headers only") {
  bench::BenchResult result;
  result.plan.models.push_back({"arima", bench::ArimaSpec{}});
  TempDir dir;
  bench::emit_reports(result, dir.path.string());
  CHECK(read_file(dir.path / "metrics.csv") ==
        "model,fraction,mode,mse,rmse,mae,mape,pocid,theils_u,status,detail\n");
  CHECK(read_file(dir.path / "timings.csv") == "model,fraction,mode,wall_seconds\n");
  CHECK(fs::exists(dir.path / "plots" / "mse.dat"));
}

TEST_CASE("metrics.csv round-trips to full precision") {
  const Series s = sim::synthetic_index(17, 200);
  const auto plan = tiny_plan(s);
  const auto result = bench::run(plan, s);
  TempDir dir;
  bench::emit_reports(result, dir.path.string());

  std::ifstream in(dir.path / "metrics.csv");
  std::string line;
  std::getline(in, line);  // header
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    const auto fields = split_csv_line(line);
    REQUIRE(fields.size() >= 10);
    if (fields[9] != "ok") continue;
    const std::string& model = fields[0];
    const double fraction = std::stod(fields[1]);
    const std::string& mode = fields[2];
    for (const auto& row : result.rows) {
      if (row.model != model || row.mode != mode ||
          bench::fraction_label(row.fraction) != bench::fraction_label(fraction))
        continue;
      CHECK(same_value(std::stod(fields[3]), row.report.mse));
      CHECK(same_value(std::stod(fields[4]), row.report.rmse));
      CHECK(same_value(std::stod(fields[5]), row.report.mae));
      CHECK(same_value(std::stod(fields[6]), row.report.mape));
      CHECK(same_value(std::stod(fields[7]), row.report.pocid));
      CHECK(same_value(std::stod(fields[8]), row.report.theils_u));
      ++checked;
    }
  }
  CHECK(checked == result.rows.size());

  // forecast CSVs reproduce evaluate_all for the direct rows
  for (const auto& row : result.rows) {
    if (row.mode != "direct" || row.failed) continue;
    const fs::path p = dir.path / "forecasts" /
                       (row.model + "_" + bench::fraction_label(row.fraction) + ".csv");
    std::ifstream fc(p);
    REQUIRE(fc.good());
    std::string header;
    std::getline(fc, header);
    std::vector<double> actual, point;
    std::string fline;
    while (std::getline(fc, fline)) {
      const auto f = split_csv_line(fline);
      actual.push_back(std::stod(f[1]));
      point.push_back(std::stod(f[2]));
    }
    CHECK(metrics::mse({actual, point}) == row.report.mse);
    CHECK(metrics::pocid({actual, point}) == row.report.pocid);
    if (!std::isnan(row.report.theils_u))
      CHECK(metrics::theils_u({actual, point}) == row.report.theils_u);
  }
}

TEST_CASE("config parsing: full happy path") {
  const std::string text = R"(
schema_version = 1

[dataset]
path = "data.csv"
value_column = "Close"

[split]
boundary = "2019-12-31"
fractions = [1.0, 0.5, 0.25]

[run]
horizon = 36
seed = 42
mape_denominator = "output"
output_dir = "out"

[[model]]
kind = "arima"
p = [0, 1, 2]
q = [0, 1, 2]

[[model]]
kind = "sarimax"
m = 5
Q = [0, 1]

[[model]]
kind = "lstm"
hidden = 32
epochs = 10

[[model]]
kind = "deepar"
scaling = false

[[model]]
kind = "deepfactor"
factors = 4
)";
  const auto plan = bench::plan_from_config(cfg::parse_config(text));
  CHECK(plan.dataset_path == "data.csv");
  CHECK(plan.boundary == Date{2019, 12, 31});
  CHECK(plan.fractions == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(plan.horizon == 36);
  CHECK(plan.seed == 42);
  REQUIRE(plan.models.size() == 5);
  CHECK(plan.models[0].name == "arima");
  CHECK(std::get<bench::SarimaxSpec>(plan.models[1].spec).seasonal.m == 5);
  CHECK(std::get<bench::NeuralSpec>(plan.models[2].spec).cell.hidden_size == 32);
  CHECK(std::get<bench::DeepArSpec>(plan.models[3].spec).config.scaling == false);
  CHECK(std::get<bench::DeepFactorSpec>(plan.models[4].spec).config.num_factors == 4);
}

TEST_CASE("config parsing rejects unknown keys, naming them") {
  const std::string text =
      "schema_version = 1\n[run]\nhorizon = 4\nhorizzon = 5\n[[model]]\nkind = \"arima\"\n";
  try {
    bench::plan_from_config(cfg::parse_config(text));
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("horizzon") != std::string::npos);
  }

  // unknown model keys too
  const std::string text2 =
      "schema_version = 1\n[[model]]\nkind = \"arima\"\nhidden = 3\n";
  CHECK_THROWS_AS(bench::plan_from_config(cfg::parse_config(text2)), ConfigError);

  // unknown tables
  const std::string text3 = "schema_version = 1\n[nosuch]\nx = 1\n";
  CHECK_THROWS_AS(bench::plan_from_config(cfg::parse_config(text3)), ConfigError);

  // schema_version required
  CHECK_THROWS_AS(bench::plan_from_config(cfg::parse_config("[[model]]\nkind = \"arima\"\n")),
                  ConfigError);
}

TEST_CASE("config syntax errors carry line numbers") {
  try {
    cfg::parse_config("a = 1\nb = \n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(cfg::parse_config("x = unquoted\n"), ConfigError);
  CHECK_THROWS_AS(cfg::parse_config("[table\n"), ConfigError);
  CHECK_THROWS_AS(cfg::parse_config("a = 1\na = 2\n"), ConfigError);
  CHECK_NOTHROW(cfg::parse_config("# only a comment\n\n"));
}

TEST_CASE("config value types") {
  const auto doc = cfg::parse_config(
      "s = \"text\"\ni = 12\nf = 1.5\nb = true\narr = [1, 2, 3]\nneg = -4\n"
      "sci = 1e-3\nesc = \"a\\nb\"\n");
  CHECK(doc.root.entries.at("s").as_string("s") == "text");
  CHECK(doc.root.entries.at("i").as_int("i") == 12);
  CHECK(doc.root.entries.at("f").as_double("f") == 1.5);
  CHECK(doc.root.entries.at("b").as_bool("b") == true);
  CHECK(doc.root.entries.at("arr").as_array("arr").size() == 3);
  CHECK(doc.root.entries.at("neg").as_int("neg") == -4);
  CHECK(doc.root.entries.at("sci").as_double("sci") == 1e-3);
  CHECK(doc.root.entries.at("esc").as_string("esc") == "a\nb");
  // int used where double expected is fine; the reverse is not
  CHECK(doc.root.entries.at("i").as_double("i") == 12.0);
  CHECK_THROWS_AS(doc.root.entries.at("f").as_int("f"), ConfigError);
}

TEST_CASE("default roster covers the whole in-scope family") {
  const auto roster = bench::default_model_roster();
  REQUIRE(roster.size() == 8);
  CHECK(roster[0].name == "arima");
  CHECK(roster[7].name == "deepfactor");
  int recurrent = 0;
  for (const auto& model : roster) recurrent += model.is_recurrent() ? 1 : 0;
  CHECK(recurrent == 5);  // rnn, gru, lstm, deepar, deepfactor
}
