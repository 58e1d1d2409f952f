// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "tsbench/csv.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/rng.hpp"

namespace tsbench::bench {

namespace fs = std::filesystem;

void ExperimentPlan::validate() const {
  if (fractions.empty()) throw ConfigError("plan: fractions must be non-empty");
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw ConfigError("plan: fraction " + fraction_label(f) + " outside (0, 1]");
  for (std::size_t i = 1; i < fractions.size(); ++i)
    if (fractions[i] >= fractions[i - 1])
      throw ConfigError("plan: fractions must be sorted descending");
  if (horizon < 1) throw ConfigError("plan: horizon must be >= 1");
  if (window_context < 1 || window_horizon < 1)
    throw ConfigError("plan: window context and horizon must be >= 1");
  if (models.empty()) throw ConfigError("plan: at least one model required");
  std::set<std::string> names;
  for (const ModelSpec& m : models) {
    if (m.name.empty()) throw ConfigError("plan: model with empty name");
    if (!names.insert(m.name).second)
      throw ConfigError("plan: duplicate model name '" + m.name + "'");
  }
}

std::string fraction_label(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", fraction);
  return buf;
}

std::uint64_t cell_seed(std::uint64_t plan_seed, const std::string& model,
                        double fraction) {
  const std::string key =
      model + "|" + fraction_label(fraction) + "|" + std::to_string(plan_seed);
  return rng::fnv1a64(key);
}

std::string BenchResult::forecast_key(const std::string& model, double fraction) {
  return model + "|" + fraction_label(fraction);
}

bool BenchResult::any_failed() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.failed; });
}

arima::ExogColumns day_of_week_exog(const std::vector<Date>& dates) {
  arima::ExogColumns cols(4, std::vector<double>(dates.size(), 0.0));
  for (std::size_t i = 0; i < dates.size(); ++i) {
    const int wd = dates[i].weekday();  // 0 Sunday .. 6 Saturday
    if (wd >= 2 && wd <= 5) cols[static_cast<std::size_t>(wd - 2)][i] = 1.0;
  }
  return cols;
}

namespace {

struct CellOutput {
  std::vector<BenchRow> rows;
  Forecast direct;
  bool have_direct = false;
};

std::string classical_detail(const arima::FittedClassical& fit) {
  std::ostringstream os;
  os << "order=" << fit.order.to_string() << " aic=" << fit.aic;
  if (fit.stationarity_warning) os << " [nonstationary-fit]";
  if (fit.invertibility_warning) os << " [noninvertible-fit]";
  return os.str();
}

std::string loss_detail(double final_loss) {
  std::ostringstream os;
  os << "final_loss=" << final_loss;
  return os.str();
}

// exog columns aligned to the positions of a contiguous slice of the full
// series (the slice is identified by its first date)
arima::ExogColumns slice_columns(const arima::ExogColumns& full,
                                 std::size_t start, std::size_t len) {
  arima::ExogColumns out;
  for (const auto& col : full)
    out.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(start),
                     col.begin() + static_cast<std::ptrdiff_t>(start + len));
  return out;
}

struct CellContext {
  const ExperimentPlan& plan;
  const Series& series;
  const ModelSpec& model;
  double fraction;
};

metrics::AlignedPair pair_of(const std::vector<double>& actual,
                             const std::vector<double>& predicted) {
  return metrics::AlignedPair{actual, predicted};
}

// Per-metric evaluation for benchmark rows: MSE failing means the pair
// itself is unusable and the cell fails, but a metric whose own
// precondition is violated (a flat forecast has no Theil's U, a zero
// output breaks the output-denominator MAPE) becomes NaN with a note, so
// the surviving metrics still reach the table.
metrics::MetricReport evaluate_tolerant(const metrics::AlignedPair& pair,
                                        metrics::MapeDenominator denom,
                                        std::string* note) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  metrics::MetricReport r;
  r.mse = metrics::mse(pair);  // structural problems surface here
  r.rmse = std::sqrt(r.mse);
  r.mae = metrics::mae(pair);
  auto soft = [&](const char* name, auto&& fn, double* slot) {
    try {
      *slot = fn();
    } catch (const Error& err) {
      *slot = kNan;
      if (!note->empty()) *note += "; ";
      *note += std::string(name) + " undefined: " + err.what();
    }
  };
  soft("mape", [&] { return metrics::mape(pair, denom); }, &r.mape);
  soft("pocid", [&] { return metrics::pocid(pair); }, &r.pocid);
  soft("theils_u", [&] { return metrics::theils_u(pair); }, &r.theils_u);
  return r;
}

CellOutput run_cell(const CellContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CellOutput out;
  BenchRow direct_row;
  direct_row.model = ctx.model.name;
  direct_row.fraction = ctx.fraction;
  direct_row.mode = "direct";

  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  try {
    auto [train, test] = split(ctx.series, SplitSpec{ctx.plan.boundary, ctx.fraction});
    const int h = ctx.plan.horizon;
    if (test.size() < static_cast<std::size_t>(h))
      throw InvalidArgumentError("test partition shorter than the horizon");
    const std::vector<double> actual(test.values.begin(), test.values.begin() + h);

    const std::uint64_t seed = cell_seed(ctx.plan.seed, ctx.model.name, ctx.fraction);
    const int wc = ctx.plan.window_context;
    const int wh = ctx.plan.window_horizon;

    // forecast_fn(context values, first forecast position, steps) -> path.
    // Positions index the train++test concatenation.
    std::function<std::vector<double>(const std::vector<double>&, std::size_t, int)>
        forecast_fn;
    bool recurrent = false;

    if (const auto* spec = std::get_if<ArimaSpec>(&ctx.model.spec)) {
      auto fit = arima::auto_order(train, spec->p_grid, spec->q_grid);
      direct_row.detail = classical_detail(fit);
      out.direct = arima::forecast(fit, h);
      out.have_direct = true;
    } else if (const auto* spec = std::get_if<SarimaSpec>(&ctx.model.spec)) {
      arima::SeasonalGridSpec seasonal{spec->P_grid, spec->Q_grid, spec->D, spec->m};
      auto fit = arima::auto_order(train, spec->p_grid, spec->q_grid, seasonal);
      direct_row.detail = classical_detail(fit);
      out.direct = arima::forecast(fit, h);
      out.have_direct = true;
    } else if (const auto* spec = std::get_if<SarimaxSpec>(&ctx.model.spec)) {
      arima::ExogColumns train_exog, future_exog;
      if (spec->exog_columns.empty()) {
        train_exog = day_of_week_exog(train.timestamps);
        std::vector<Date> fut(test.timestamps.begin(), test.timestamps.begin() + h);
        future_exog = day_of_week_exog(fut);
      } else {
        if (ctx.plan.dataset_path.empty())
          throw ConfigError("named exog columns need a dataset path");
        const auto train_start = static_cast<std::size_t>(
            std::lower_bound(ctx.series.timestamps.begin(),
                             ctx.series.timestamps.end(), train.first_date()) -
            ctx.series.timestamps.begin());
        const auto test_start = static_cast<std::size_t>(
            std::lower_bound(ctx.series.timestamps.begin(),
                             ctx.series.timestamps.end(), test.first_date()) -
            ctx.series.timestamps.begin());
        arima::ExogColumns full;
        for (const std::string& name : spec->exog_columns) {
          Series col = load_csv(ctx.plan.dataset_path, name, ctx.plan.date_column);
          if (col.timestamps != ctx.series.timestamps)
            throw DimensionMismatchError("exog column '" + name +
                                         "' does not align with the value column");
          full.push_back(std::move(col.values));
        }
        train_exog = slice_columns(full, train_start, train.size());
        future_exog = slice_columns(full, test_start, static_cast<std::size_t>(h));
      }
      const auto& s = spec->seasonal;
      arima::SeasonalGridSpec seasonal{s.P_grid, s.Q_grid, s.D, s.m};
      auto fit = arima::auto_order(train, s.p_grid, s.q_grid, seasonal, &train_exog);
      direct_row.detail = classical_detail(fit);
      out.direct = arima::forecast(fit, h, &future_exog);
      out.have_direct = true;
    } else if (const auto* spec = std::get_if<NeuralSpec>(&ctx.model.spec)) {
      recurrent = true;
      auto windows = make_windows(train, wc, wh);
      nn::TrainConfig tc = spec->train;
      tc.seed = seed;
      auto model = nn::train_point_forecaster(windows, spec->cell, tc);
      direct_row.detail = loss_detail(model.final_loss);
      const auto ctx_len = static_cast<std::size_t>(wc + wh);
      std::vector<double> context(train.values.end() - static_cast<std::ptrdiff_t>(
                                      std::min(ctx_len, train.size())),
                                  train.values.end());
      out.direct = nn::forecast_recursive(model, context, h);
      out.have_direct = true;
      forecast_fn = [model = std::move(model)](const std::vector<double>& c,
                                               std::size_t, int steps) {
        return nn::forecast_recursive(model, c, steps).point;
      };
    } else if (const auto* spec = std::get_if<DeepArSpec>(&ctx.model.spec)) {
      recurrent = true;
      auto windows = make_windows(train, wc, wh);
      nn::TrainConfig tc = spec->train;
      tc.seed = seed;
      auto model = nn::deepar_train(windows, spec->config, tc);
      direct_row.detail = loss_detail(model.final_loss);
      const auto ctx_len = static_cast<std::size_t>(wc + wh);
      std::vector<double> context(train.values.end() - static_cast<std::ptrdiff_t>(
                                      std::min(ctx_len, train.size())),
                                  train.values.end());
      const int num_samples = spec->config.num_samples;
      out.direct = nn::deepar_forecast(model, context, train.size(), h, num_samples,
                                       rng::derive_seed(seed, 1));
      out.have_direct = true;
      forecast_fn = [model = std::move(model), num_samples, seed](
                        const std::vector<double>& c, std::size_t pos, int steps) {
        return nn::deepar_forecast(model, c, pos, steps, num_samples,
                                   rng::derive_seed(seed, 100 + pos))
            .point;
      };
    } else if (const auto* spec = std::get_if<DeepFactorSpec>(&ctx.model.spec)) {
      recurrent = true;
      auto windows = make_windows(train, wc, wh);
      nn::TrainConfig tc = spec->train;
      tc.seed = seed;
      auto model = nn::deepfactor_train(windows, spec->config, tc);
      direct_row.detail = loss_detail(model.final_loss);
      const int num_samples = spec->num_samples;
      out.direct = nn::deepfactor_forecast(model, h, num_samples,
                                           rng::derive_seed(seed, 1), train.size());
      out.have_direct = true;
      forecast_fn = [model = std::move(model), num_samples, seed](
                        const std::vector<double>&, std::size_t pos, int steps) {
        return nn::deepfactor_forecast(model, steps, num_samples,
                                       rng::derive_seed(seed, 100 + pos), pos)
            .point;
      };
    } else {
      throw InvalidArgumentError("unhandled model spec");
    }

    std::string metric_note;
    direct_row.report = evaluate_tolerant(pair_of(actual, out.direct.point),
                                          ctx.plan.mape_denominator, &metric_note);
    if (!metric_note.empty()) {
      if (!direct_row.detail.empty()) direct_row.detail += "; ";
      direct_row.detail += metric_note;
    }
    direct_row.wall_seconds = elapsed();
    out.rows.push_back(direct_row);

    if (recurrent && forecast_fn) {
      const auto t1 = std::chrono::steady_clock::now();
      BenchRow wrow;
      wrow.model = ctx.model.name;
      wrow.fraction = ctx.fraction;
      wrow.mode = "windowed";
      wrow.detail = direct_row.detail;
      try {
        std::vector<double> combined = train.values;
        combined.insert(combined.end(), test.values.begin(),
                        test.values.begin() + h);
        const std::size_t train_len = train.size();
        const auto ctx_len = static_cast<std::size_t>(wc + wh);

        std::vector<double> preds, acts;
        for (int o = 0; o + wh <= h; o += wh) {
          const std::size_t first = train_len + static_cast<std::size_t>(o);
          const std::size_t lo = first - std::min(ctx_len, first);
          std::vector<double> context(combined.begin() + static_cast<std::ptrdiff_t>(lo),
                                      combined.begin() + static_cast<std::ptrdiff_t>(first));
          std::vector<double> path = forecast_fn(context, first, wh);
          preds.insert(preds.end(), path.begin(), path.end());
          acts.insert(acts.end(),
                      combined.begin() + static_cast<std::ptrdiff_t>(first),
                      combined.begin() + static_cast<std::ptrdiff_t>(first) + wh);
        }
        std::string wnote;
        wrow.report =
            evaluate_tolerant(pair_of(acts, preds), ctx.plan.mape_denominator, &wnote);
        if (!wnote.empty()) {
          if (!wrow.detail.empty()) wrow.detail += "; ";
          wrow.detail += wnote;
        }
      } catch (const std::exception& err) {
        wrow.failed = true;
        wrow.error = err.what();
      }
      wrow.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
              .count();
      out.rows.push_back(std::move(wrow));
    }
  } catch (const std::exception& err) {
    direct_row.failed = true;
    direct_row.error = err.what();
    direct_row.wall_seconds = elapsed();
    out.rows.clear();
    out.have_direct = false;
    out.rows.push_back(direct_row);
    if (ctx.model.is_recurrent()) {
      BenchRow wrow = direct_row;
      wrow.mode = "windowed";
      out.rows.push_back(std::move(wrow));
    }
  }
  return out;
}

}  // namespace

BenchResult run(const ExperimentPlan& plan, const Series& series, int jobs) {
  plan.validate();
  BenchResult result;
  result.plan = plan;

  {
    auto [train, test] = split(series, SplitSpec{plan.boundary, plan.fractions.front()});
    if (test.size() < static_cast<std::size_t>(plan.horizon))
      throw InvalidArgumentError("test partition has " + std::to_string(test.size()) +
                                 " observations, horizon needs " +
                                 std::to_string(plan.horizon));
    result.test_dates.assign(test.timestamps.begin(),
                             test.timestamps.begin() + plan.horizon);
    result.test_actuals.assign(test.values.begin(),
                               test.values.begin() + plan.horizon);
  }

  std::vector<CellContext> cells;
  for (double fraction : plan.fractions)
    for (const ModelSpec& model : plan.models)
      cells.push_back(CellContext{plan, series, model, fraction});

  std::vector<CellOutput> outputs(cells.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      outputs[i] = run_cell(cells[i]);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (BenchRow& row : outputs[i].rows) result.rows.push_back(std::move(row));
    if (outputs[i].have_direct)
      result.forecasts[BenchResult::forecast_key(cells[i].model.name,
                                                 cells[i].fraction)] =
          std::move(outputs[i].direct);
  }
  return result;
}

BenchResult run(const ExperimentPlan& plan, int jobs) {
  if (plan.dataset_path.empty())
    throw ConfigError("plan has no dataset path");
  LoadSummary summary;
  Series series = load_csv(plan.dataset_path, plan.value_column, plan.date_column,
                           &summary);
  std::fprintf(stderr, "%s\n", summary.to_log_line().c_str());
  return run(plan, series, jobs);
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else
      out += '_';
  }
  return out;
}

const std::array<const char*, 6> kMetricNames = {"mse",  "rmse",  "mae",
                                                 "mape", "pocid", "theils_u"};

double metric_value(const metrics::MetricReport& r, std::size_t idx) {
  switch (idx) {
    case 0: return r.mse;
    case 1: return r.rmse;
    case 2: return r.mae;
    case 3: return r.mape;
    case 4: return r.pocid;
    default: return r.theils_u;
  }
}

void write_metrics_csv(const BenchResult& result, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "model,fraction,mode,mse,rmse,mae,mape,pocid,theils_u,status,detail\n";
  for (const BenchRow& row : result.rows) {
    os << row.model << ',' << fraction_label(row.fraction) << ',' << row.mode << ',';
    if (row.failed) {
      os << ",,,,,,failed," << csv_quote(row.error) << "\n";
    } else {
      for (std::size_t i = 0; i < kMetricNames.size(); ++i)
        os << fmt(metric_value(row.report, i)) << ',';
      os << "ok," << csv_quote(row.detail) << "\n";
    }
  }
}

void write_timings_csv(const BenchResult& result, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "model,fraction,mode,wall_seconds\n";
  for (const BenchRow& row : result.rows)
    os << row.model << ',' << fraction_label(row.fraction) << ',' << row.mode
       << ',' << fmt(row.wall_seconds) << "\n";
}

void write_metrics_md(const BenchResult& result, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "# Benchmark metrics\n\n";
  os << "MAPE is reported in percent. Best value per metric column is bold\n";
  os << "(lowest, except POCID where highest wins).\n";

  for (double fraction : result.plan.fractions) {
    for (const char* mode : {"direct", "windowed"}) {
      std::vector<const BenchRow*> rows;
      for (const BenchRow& row : result.rows)
        if (row.fraction == fraction && row.mode == mode) rows.push_back(&row);
      if (rows.empty()) continue;

      os << "\n## Train fraction " << fraction_label(fraction) << " ("
         << mode << ")\n\n";
      os << "| Model | MSE | RMSE | MAE | MAPE | POCID | Theil's U |\n";
      os << "|---|---|---|---|---|---|---|\n";

      std::array<double, 6> best{};
      std::array<bool, 6> any{};
      for (const BenchRow* row : rows) {
        if (row->failed) continue;
        for (std::size_t i = 0; i < 6; ++i) {
          const double v = metric_value(row->report, i);
          if (std::isnan(v)) continue;
          const bool improved = !any[i] || (i == 4 ? v > best[i] : v < best[i]);
          if (improved) best[i] = v;
          any[i] = true;
        }
      }
      for (const BenchRow* row : rows) {
        os << "| " << row->model << " |";
        if (row->failed) {
          os << " failed |  |  |  |  |  |\n";
          continue;
        }
        for (std::size_t i = 0; i < 6; ++i) {
          const double v = metric_value(row->report, i);
          char buf[40];
          std::snprintf(buf, sizeof(buf), "%.6g", v);
          if (any[i] && v == best[i])
            os << " **" << buf << "** |";
          else
            os << ' ' << buf << " |";
        }
        os << "\n";
      }
    }
  }
}

void write_forecast_csvs(const BenchResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  for (const BenchRow& row : result.rows) {
    if (row.mode != "direct" || row.failed) continue;
    const auto key = BenchResult::forecast_key(row.model, row.fraction);
    const auto it = result.forecasts.find(key);
    if (it == result.forecasts.end()) continue;
    const Forecast& fc = it->second;

    const fs::path path = dir / (sanitize_name(row.model) + "_" +
                                 fraction_label(row.fraction) + ".csv");
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path.string());
    os << "date,actual,point,q10,q50,q90\n";
    for (std::size_t j = 0; j < result.test_actuals.size() &&
                            j < fc.point.size();
         ++j) {
      os << result.test_dates[j].iso() << ',' << fmt(result.test_actuals[j])
         << ',' << fmt(fc.point[j]);
      for (double level : {0.1, 0.5, 0.9}) {
        os << ',';
        const auto q = fc.quantiles.find(level);
        if (q != fc.quantiles.end()) os << fmt(q->second[j]);
      }
      os << "\n";
    }
  }
}

void write_plot_data(const BenchResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t metric = 0; metric < kMetricNames.size(); ++metric) {
    const fs::path path = dir / (std::string(kMetricNames[metric]) + ".dat");
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path.string());
    os << "# fraction";
    for (const ModelSpec& model : result.plan.models) os << ' ' << model.name;
    os << "\n";
    for (double fraction : result.plan.fractions) {
      os << fraction_label(fraction);
      for (const ModelSpec& model : result.plan.models) {
        const BenchRow* found = nullptr;
        for (const BenchRow& row : result.rows)
          if (row.model == model.name && row.fraction == fraction &&
              row.mode == "direct") {
            found = &row;
            break;
          }
        if (found && !found->failed)
          os << ' ' << fmt(metric_value(found->report, metric));
        else
          os << " nan";
      }
      os << "\n";
    }
  }
}

}  // namespace

void emit_reports(const BenchResult& result, const std::string& dir) {
  const fs::path base(dir);
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) throw IoError("cannot create output dir " + dir + ": " + ec.message());

  write_metrics_csv(result, base / "metrics.csv");
  write_timings_csv(result, base / "timings.csv");
  write_metrics_md(result, base / "metrics.md");
  write_forecast_csvs(result, base / "forecasts");
  write_plot_data(result, base / "plots");
}

namespace {

nn::TrainConfig train_from_reader(cfg::TableReader& reader,
                                  const nn::TrainConfig& defaults) {
  nn::TrainConfig tc = defaults;
  tc.learning_rate = reader.get_double("learning_rate", tc.learning_rate);
  tc.epochs = static_cast<int>(reader.get_int("epochs", tc.epochs));
  tc.batch_size = static_cast<int>(reader.get_int("batch", tc.batch_size));
  tc.grad_clip = reader.get_double("grad_clip", tc.grad_clip);
  return tc;
}

ModelSpec model_from_table(const cfg::ConfigTable& table, std::size_t index) {
  cfg::TableReader reader(table, "[[model]] #" + std::to_string(index + 1));
  const std::string kind = reader.require_string("kind");
  ModelSpec model;
  model.name = reader.get_string("name", kind);

  if (kind == "arima") {
    ArimaSpec spec;
    spec.p_grid = reader.get_int_array("p", spec.p_grid);
    spec.q_grid = reader.get_int_array("q", spec.q_grid);
    model.spec = spec;
  } else if (kind == "sarima" || kind == "sarimax") {
    SarimaSpec spec;
    spec.p_grid = reader.get_int_array("p", spec.p_grid);
    spec.q_grid = reader.get_int_array("q", spec.q_grid);
    spec.P_grid = reader.get_int_array("P", spec.P_grid);
    spec.Q_grid = reader.get_int_array("Q", spec.Q_grid);
    spec.D = static_cast<int>(reader.get_int("D", spec.D));
    spec.m = static_cast<int>(reader.get_int("m", spec.m));
    if (kind == "sarima") {
      model.spec = spec;
    } else {
      SarimaxSpec sx;
      sx.seasonal = spec;
      sx.exog_columns = reader.get_string_array("exog", {});
      model.spec = sx;
    }
  } else if (kind == "rnn" || kind == "gru" || kind == "lstm") {
    NeuralSpec spec;
    spec.cell.kind = nn::cell_kind_from_name(kind);
    spec.cell.hidden_size = static_cast<int>(reader.get_int("hidden", 32));
    spec.cell.num_layers = static_cast<int>(reader.get_int("layers", 1));
    spec.cell.input_size = 1;
    spec.train = train_from_reader(reader, nn::TrainConfig{});
    model.spec = spec;
  } else if (kind == "deepar") {
    DeepArSpec spec;
    spec.config.num_layers = static_cast<int>(reader.get_int("layers", spec.config.num_layers));
    spec.config.hidden = static_cast<int>(reader.get_int("hidden", spec.config.hidden));
    spec.config.scaling = reader.get_bool("scaling", spec.config.scaling);
    spec.config.learning_rate =
        reader.get_double("learning_rate", spec.config.learning_rate);
    spec.config.num_samples =
        static_cast<int>(reader.get_int("num_samples", spec.config.num_samples));
    const std::string lik = reader.get_string("likelihood", "gaussian");
    if (lik == "gaussian") {
      spec.config.likelihood = nn::DeepArConfig::Likelihood::Gaussian;
    } else if (lik == "student_t") {
      spec.config.likelihood = nn::DeepArConfig::Likelihood::StudentT;
    } else {
      throw ConfigError("model '" + model.name + "': unknown likelihood '" + lik + "'");
    }
    spec.config.student_t_dof =
        reader.get_double("student_t_dof", spec.config.student_t_dof);
    spec.train = train_from_reader(reader, nn::TrainConfig{});
    spec.train.learning_rate = spec.config.learning_rate;
    model.spec = spec;
  } else if (kind == "deepfactor") {
    DeepFactorSpec spec;
    spec.config.global_layers =
        static_cast<int>(reader.get_int("global_layers", spec.config.global_layers));
    spec.config.global_hidden =
        static_cast<int>(reader.get_int("global_hidden", spec.config.global_hidden));
    spec.config.local_layers =
        static_cast<int>(reader.get_int("local_layers", spec.config.local_layers));
    spec.config.local_hidden =
        static_cast<int>(reader.get_int("local_hidden", spec.config.local_hidden));
    spec.config.num_factors =
        static_cast<int>(reader.get_int("factors", spec.config.num_factors));
    spec.num_samples = static_cast<int>(reader.get_int("num_samples", spec.num_samples));
    spec.train = train_from_reader(reader, nn::TrainConfig{});
    model.spec = spec;
  } else {
    throw ConfigError("unknown model kind '" + kind + "'");
  }
  reader.finish();
  return model;
}

}  // namespace

ExperimentPlan plan_from_config(const cfg::ConfigDoc& doc) {
  ExperimentPlan plan;

  cfg::TableReader root(doc.root, "config root");
  const std::int64_t version = root.get_int("schema_version", 0);
  if (version != 1)
    throw ConfigError("config: schema_version must be 1 (got " +
                      std::to_string(version) + ")");
  root.finish();

  for (const auto& [name, table] : doc.tables)
    if (name != "dataset" && name != "split" && name != "run")
      throw ConfigError("config: unknown table [" + name + "] (line " +
                        std::to_string(table.line) + ")");

  if (doc.tables.count("dataset")) {
    cfg::TableReader reader(doc.tables.at("dataset"), "[dataset]");
    plan.dataset_path = reader.get_string("path", "");
    plan.date_column = reader.get_string("date_column", plan.date_column);
    plan.value_column = reader.get_string("value_column", plan.value_column);
    reader.finish();
  }
  if (doc.tables.count("split")) {
    cfg::TableReader reader(doc.tables.at("split"), "[split]");
    const std::string boundary = reader.get_string("boundary", "");
    if (!boundary.empty()) plan.boundary = Date::parse(boundary);
    plan.fractions = reader.get_double_array("fractions", plan.fractions);
    reader.finish();
  }
  if (doc.tables.count("run")) {
    cfg::TableReader reader(doc.tables.at("run"), "[run]");
    plan.horizon = static_cast<int>(reader.get_int("horizon", plan.horizon));
    plan.seed = static_cast<std::uint64_t>(reader.get_int("seed", static_cast<std::int64_t>(plan.seed)));
    plan.output_dir = reader.get_string("output_dir", plan.output_dir);
    plan.window_context =
        static_cast<int>(reader.get_int("window_context", plan.window_context));
    plan.window_horizon =
        static_cast<int>(reader.get_int("window_horizon", plan.window_horizon));
    const std::string denom = reader.get_string("mape_denominator", "output");
    if (denom == "output") {
      plan.mape_denominator = metrics::MapeDenominator::Output;
    } else if (denom == "target") {
      plan.mape_denominator = metrics::MapeDenominator::Target;
    } else {
      throw ConfigError("config: mape_denominator must be output or target");
    }
    reader.finish();
  }

  std::size_t index = 0;
  for (const auto& [name, table] : doc.table_arrays) {
    if (name != "model")
      throw ConfigError("config: unknown table array [[" + name + "]] (line " +
                        std::to_string(table.line) + ")");
    plan.models.push_back(model_from_table(table, index++));
  }

  plan.validate();
  return plan;
}

ExperimentPlan plan_from_config_file(const std::string& path) {
  return plan_from_config(cfg::parse_config_file(path));
}

std::vector<ModelSpec> default_model_roster() {
  std::vector<ModelSpec> models;
  models.push_back({"arima", ArimaSpec{}});
  models.push_back({"sarima", SarimaSpec{}});
  models.push_back({"sarimax", SarimaxSpec{}});
  for (const char* kind : {"rnn", "gru", "lstm"}) {
    NeuralSpec spec;
    spec.cell.kind = nn::cell_kind_from_name(kind);
    models.push_back({kind, spec});
  }
  models.push_back({"deepar", DeepArSpec{}});
  models.push_back({"deepfactor", DeepFactorSpec{}});
  return models;
}

}  // namespace tsbench::bench
