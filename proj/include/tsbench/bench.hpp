// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsbench/arima.hpp"
#include "tsbench/config.hpp"
#include "tsbench/deep_factor.hpp"
#include "tsbench/deepar.hpp"
#include "tsbench/metrics.hpp"
#include "tsbench/point_forecaster.hpp"
#include "tsbench/series.hpp"

namespace tsbench::bench {

struct ArimaSpec {
  std::vector<int> p_grid{0, 1, 2};
  std::vector<int> q_grid{0, 1, 2};
};

struct SarimaSpec {
  std::vector<int> p_grid{0, 1, 2};
  std::vector<int> q_grid{0, 1, 2};
  std::vector<int> P_grid{0};
  std::vector<int> Q_grid{0, 1};
  int D = 0;
  int m = 5;  // trading week
};

struct SarimaxSpec {
  SarimaSpec seasonal;
  // names of numeric dataset columns; empty selects the built-in
  // day-of-week one-hot (4 columns, Monday dropped as reference)
  std::vector<std::string> exog_columns;
};

struct NeuralSpec {
  nn::CellConfig cell;
  nn::TrainConfig train;
};

struct DeepArSpec {
  nn::DeepArConfig config;
  nn::TrainConfig train;
};

struct DeepFactorSpec {
  nn::DeepFactorConfig config;
  nn::TrainConfig train;
  int num_samples = 200;
};

struct ModelSpec {
  std::string name;
  std::variant<ArimaSpec, SarimaSpec, SarimaxSpec, NeuralSpec, DeepArSpec,
               DeepFactorSpec>
      spec;

  bool is_recurrent() const {
    return std::holds_alternative<NeuralSpec>(spec) ||
           std::holds_alternative<DeepArSpec>(spec) ||
           std::holds_alternative<DeepFactorSpec>(spec);
  }
};

struct ExperimentPlan {
  std::string dataset_path;
  std::string date_column = "Date";
  std::string value_column = "Close";
  Date boundary{2019, 12, 31};
  std::vector<double> fractions{1.0, 0.5, 0.25};
  int horizon = 36;
  int window_context = 5;
  int window_horizon = 5;
  std::vector<ModelSpec> models;
  std::uint64_t seed = 42;
  metrics::MapeDenominator mape_denominator = metrics::MapeDenominator::Output;
  std::string output_dir = "out";

  void validate() const;
};

struct BenchRow {
  std::string model;
  double fraction = 1.0;
  std::string mode;  // "direct" or "windowed"
  bool failed = false;
  std::string error;
  metrics::MetricReport report{};
  double wall_seconds = 0.0;
  std::string detail;  // selected order / final loss
};

struct BenchResult {
  ExperimentPlan plan;
  std::vector<BenchRow> rows;
  std::vector<Date> test_dates;      // first `horizon` test dates
  std::vector<double> test_actuals;  // matching observed values
  std::map<std::string, Forecast> forecasts;  // "model|fraction" -> direct path

  bool any_failed() const;
  static std::string forecast_key(const std::string& model, double fraction);
};

/// Canonical text for a fraction (shortest decimal, e.g. "1", "0.5").
std::string fraction_label(double fraction);

/// Per-cell seed: fnv1a64("model|fraction|seed").
std::uint64_t cell_seed(std::uint64_t plan_seed, const std::string& model,
                        double fraction);

/// Day-of-week one-hot regressors (Tue..Fri; Monday is the reference).
arima::ExogColumns day_of_week_exog(const std::vector<Date>& dates);

/// Executes every (fraction x model) cell. Cells run in a pool of `jobs`
/// workers; per-cell seeds make the result independent of scheduling.
/// Failures are recorded as failed rows and do not abort the run.
BenchResult run(const ExperimentPlan& plan, const Series& series, int jobs = 1);
BenchResult run(const ExperimentPlan& plan, int jobs = 1);  // loads the CSV

/// Writes metrics.csv, metrics.md, timings.csv, forecasts/*.csv and
/// plots/*.dat under `dir`.
void emit_reports(const BenchResult& result, const std::string& dir);

ExperimentPlan plan_from_config(const cfg::ConfigDoc& doc);
ExperimentPlan plan_from_config_file(const std::string& path);

/// The full in-scope roster with default hyperparameters.
std::vector<ModelSpec> default_model_roster();

}  // namespace tsbench::bench
