// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsbench/adf.hpp"
#include "tsbench/bench.hpp"
#include "tsbench/csv.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/simulate.hpp"

namespace {

using namespace tsbench;

void write_series_csv(const Series& series, const std::string& path,
                      const std::string& value_column) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path + "'");
  os << "Date," << value_column << "\n";
  char buf[40];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
    os << series.timestamps[i].iso() << ',' << buf << "\n";
  }
}

int cmd_inspect(const std::string& path, const std::string& value_column,
                const std::string& date_column, int window) {
  LoadSummary summary;
  Series series = load_csv(path, value_column, date_column, &summary);
  std::cout << summary.to_log_line() << "\n";
  std::cout << "series: " << series.first_date().iso() << " .. "
            << series.last_date().iso() << ", n=" << series.size() << "\n";

  double lo = series.values.front(), hi = lo;
  for (double v : series.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::printf("values: min=%.6g max=%.6g\n", lo, hi);

  const auto report = adf_test(series, -1, window);
  if (report.rolling_mean.size() > 0) {
    const auto& rm = report.rolling_mean.values;
    const auto& rs = report.rolling_std.values;
    const auto mm = std::minmax_element(rm.begin(), rm.end());
    const auto ms = std::minmax_element(rs.begin(), rs.end());
    std::printf("rolling(window=%d): mean in [%.6g, %.6g], std in [%.6g, %.6g]\n",
                window, *mm.first, *mm.second, *ms.first, *ms.second);
  }
  std::printf("adf: statistic=%.4f lag=%d cv5%%=%.2f -> %s\n",
              report.adf_statistic, report.lag_order,
              report.critical_values.at(0.05),
              report.is_stationary ? "stationary" : "non-stationary");
  return 0;
}

int cmd_fit(const bench::ExperimentPlan& plan) {
  if (plan.models.empty()) throw ConfigError("fit: config has no [[model]]");
  const bench::ModelSpec& model = plan.models.front();
  std::cout << "fitting model '" << model.name << "' on fraction "
            << bench::fraction_label(plan.fractions.front()) << "\n";

  bench::ExperimentPlan single = plan;
  single.models = {model};
  single.fractions = {plan.fractions.front()};
  const auto result = bench::run(single, 1);

  for (const auto& row : result.rows) {
    if (row.failed) {
      std::cout << row.mode << ": FAILED: " << row.error << "\n";
      continue;
    }
    std::printf("%s: %s | mse=%.6g rmse=%.6g mae=%.6g mape=%.6g pocid=%.4g theils_u=%.6g (%.2fs)\n",
                row.mode.c_str(), row.detail.c_str(), row.report.mse,
                row.report.rmse, row.report.mae, row.report.mape,
                row.report.pocid, row.report.theils_u, row.wall_seconds);
  }
  return result.any_failed() ? 2 : 0;
}

int cmd_bench(const bench::ExperimentPlan& plan, int jobs) {
  const auto result = bench::run(plan, jobs);
  bench::emit_reports(result, plan.output_dir);

  std::printf("%-14s %-9s %-9s %12s %12s %10s\n", "model", "fraction", "mode",
              "rmse", "mape", "seconds");
  for (const auto& row : result.rows) {
    if (row.failed) {
      std::printf("%-14s %-9s %-9s %25s %10.2f\n", row.model.c_str(),
                  bench::fraction_label(row.fraction).c_str(), row.mode.c_str(),
                  "FAILED", row.wall_seconds);
    } else {
      std::printf("%-14s %-9s %-9s %12.4g %12.4g %10.2f\n", row.model.c_str(),
                  bench::fraction_label(row.fraction).c_str(), row.mode.c_str(),
                  row.report.rmse, row.report.mape, row.wall_seconds);
    }
  }
  std::cout << "reports written to " << plan.output_dir << "\n";
  return result.any_failed() ? 2 : 0;
}

struct SimulateArgs {
  std::string kind;
  std::string out;
  std::size_t n = 500;
  std::uint64_t seed = 42;
  double phi = 0.7, theta = 0.6, sigma = 1.0, drift = 0.0;
  double period = 20.0, amplitude = 1.0, offset = 10.0, noise = 0.0;
  double mean = 0.0, start_value = 100.0;
};

int cmd_simulate(const SimulateArgs& args) {
  Series series;
  if (args.kind == "whitenoise") {
    series = sim::white_noise(args.n, args.seed, args.mean, args.sigma);
  } else if (args.kind == "randomwalk") {
    series = sim::random_walk(args.n, args.seed, args.drift, args.sigma,
                              args.start_value);
  } else if (args.kind == "ar1") {
    series = sim::ar1(args.n, args.seed, args.phi, args.sigma, args.mean);
  } else if (args.kind == "ma1") {
    series = sim::ma1(args.n, args.seed, args.theta, args.sigma, args.mean);
  } else if (args.kind == "arima") {
    series = sim::arima011(args.n, args.seed, args.theta, args.sigma,
                           args.start_value);
  } else if (args.kind == "sine") {
    series = sim::sine(args.n, args.seed, args.period, args.amplitude,
                       args.offset, args.noise);
  } else if (args.kind == "index") {
    series = sim::synthetic_index(args.seed, args.n);
  } else {
    std::cerr << "unknown kind '" << args.kind
              << "' (use arima|ar1|ma1|sine|randomwalk|whitenoise|index)\n";
    return 1;
  }
  write_series_csv(series, args.out, "Close");
  std::cout << "wrote " << series.size() << " rows to " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-series forecasting benchmark toolkit"};
  app.require_subcommand(1);

  // inspect
  std::string in_path, in_value = "Close", in_date = "Date";
  int in_window = 10;
  auto* inspect = app.add_subcommand("inspect", "load summary, rolling stats, ADF verdict");
  inspect->add_option("csv", in_path, "input CSV")->required();
  inspect->add_option("--value-column", in_value);
  inspect->add_option("--date-column", in_date);
  inspect->add_option("--window", in_window, "rolling window length");

  // fit
  std::string fit_config;
  auto* fit = app.add_subcommand("fit", "fit the first configured model and print diagnostics");
  fit->add_option("config", fit_config, "experiment config file")->required();

  // bench
  std::string bench_config, bench_out;
  std::uint64_t bench_seed = 0;
  bool bench_seed_set = false, bench_out_set = false, bench_horizon_set = false,
       bench_fractions_set = false;
  int bench_horizon = 0, bench_jobs = 1;
  std::vector<double> bench_fractions;
  auto* benchcmd = app.add_subcommand("bench", "run the full experiment matrix and emit reports");
  benchcmd->add_option("config", bench_config, "experiment config file")->required();
  benchcmd->add_option("--seed", bench_seed)->each([&](const std::string&) { bench_seed_set = true; });
  benchcmd->add_option("--output-dir", bench_out)->each([&](const std::string&) { bench_out_set = true; });
  benchcmd->add_option("--horizon", bench_horizon)->each([&](const std::string&) { bench_horizon_set = true; });
  benchcmd->add_option("--fractions", bench_fractions)->each([&](const std::string&) { bench_fractions_set = true; });
  benchcmd->add_option("--jobs", bench_jobs, "parallel cells");

  // simulate
  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "generate a seeded synthetic dataset CSV");
  simulate->add_option("kind", sim_args.kind, "arima|ar1|ma1|sine|randomwalk|whitenoise|index")->required();
  simulate->add_option("out", sim_args.out, "output CSV path")->required();
  simulate->add_option("--n", sim_args.n);
  simulate->add_option("--seed", sim_args.seed);
  simulate->add_option("--phi", sim_args.phi);
  simulate->add_option("--theta", sim_args.theta);
  simulate->add_option("--sigma", sim_args.sigma);
  simulate->add_option("--drift", sim_args.drift);
  simulate->add_option("--period", sim_args.period);
  simulate->add_option("--amplitude", sim_args.amplitude);
  simulate->add_option("--offset", sim_args.offset);
  simulate->add_option("--noise", sim_args.noise);
  simulate->add_option("--mean", sim_args.mean);
  simulate->add_option("--start-value", sim_args.start_value);

  CLI11_PARSE(app, argc, argv);

  try {
    if (inspect->parsed())
      return cmd_inspect(in_path, in_value, in_date, in_window);
    if (fit->parsed())
      return cmd_fit(tsbench::bench::plan_from_config_file(fit_config));
    if (benchcmd->parsed()) {
      auto plan = tsbench::bench::plan_from_config_file(bench_config);
      if (bench_seed_set) plan.seed = bench_seed;
      if (bench_out_set) plan.output_dir = bench_out;
      if (bench_horizon_set) plan.horizon = bench_horizon;
      if (bench_fractions_set) plan.fractions = bench_fractions;
      plan.validate();
      return cmd_bench(plan, bench_jobs);
    }
    if (simulate->parsed()) return cmd_simulate(sim_args);
  } catch (const tsbench::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
