#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "format.hpp"
#include "json.hpp"
#include "noiseplane/complexity.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/noise.hpp"
#include "noiseplane/ordinal.hpp"
#include "noiseplane/report.hpp"
#include "noiseplane/spectral.hpp"

namespace noiseplane {

namespace {

using cli::fmt6;
using cli::safe_filename;
using cli::write_text;

const std::vector<Window> kPlaneWindows{Window::ThreeYears, Window::OneYear, Window::SixMonths};
const std::vector<Window> kFullWindow{Window::Full};

std::vector<TimeSeries> load_inputs(const RunConfig& config) {
  if (config.inputs.empty()) throw Error(ErrorCode::InvalidArgument, "no input series given");
  std::vector<TimeSeries> out;
  out.reserve(config.inputs.size());
  for (const auto& path : config.inputs) out.push_back(load_csv(path, config.column));
  return out;
}

const std::vector<Window>& windows_or(const RunConfig& config, const std::vector<Window>& fallback) {
  return config.windows.empty() ? fallback : config.windows;
}

// Full range means the whole series; the other windows are y_train.
TimeSeries segment_for(const TimeSeries& series, Window window, Date split_date) {
  if (window == Window::Full) return series;
  return split(series, {split_date, window}).train;
}

void record(CommandResult& result, const std::string& context, const Error& e) {
  result.errors.push_back({context, std::string(to_string(e.code())), e.what()});
}

OrdinalConfig ordinal_config(const RunConfig& config, Window window) {
  return {config.d.value_or(default_embedding_dimension(window)), 1, config.check_admissibility};
}

// Ordinal distributions of `seeds` realizations of a noise colour, memoised
// per (length, d, alpha).
class NoiseBank {
 public:
  explicit NoiseBank(const RunConfig& config) : config_(config) {}

  const std::vector<OrdinalDistribution>& get(double alpha, std::size_t length,
                                              const OrdinalConfig& ordinal) {
    const Key key{length, ordinal.d, alpha};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<OrdinalDistribution> dists;
    dists.reserve(config_.seeds);
    for (std::size_t k = 0; k < config_.seeds; ++k) {
      const auto x = generate_noise({alpha, length, config_.seed + k});
      dists.push_back(extract_patterns(x, ordinal));
    }
    return cache_.emplace(key, std::move(dists)).first->second;
  }

 private:
  using Key = std::tuple<std::size_t, int, double>;
  const RunConfig& config_;
  std::map<Key, std::vector<OrdinalDistribution>> cache_;
};

void require_seeds(const RunConfig& config) {
  if (config.seeds < 1) throw Error(ErrorCode::InvalidArgument, "--seeds must be >= 1");
}

}  // namespace

CommandResult cmd_chplane(const RunConfig& config) {
  require_seeds(config);
  const auto series = load_inputs(config);
  CommandResult result;
  NoiseBank bank(config);
  for (Window window : windows_or(config, kPlaneWindows)) {
    const std::string wname(to_string(window));
    const OrdinalConfig ordinal = ordinal_config(config, window);
    struct Row {
      std::string label;
      CHPoint point;
    };
    std::vector<Row> rows;
    std::size_t noise_length = 0;
    for (const auto& s : series) {
      try {
        const auto segment = segment_for(s, window, config.split_date);
        noise_length = std::max(noise_length, segment.size());
        rows.push_back({s.name(), statistical_complexity(extract_patterns(segment, ordinal))});
      } catch (const Error& e) {
        record(result, "chplane/" + wname + "/" + s.name(), e);
      }
    }
    if (noise_length == 0) continue;
    for (const auto& color : plane_noises()) {
      try {
        CHPoint avg;
        const auto& dists = bank.get(color.alpha, noise_length, ordinal);
        for (const auto& dist : dists) {
          const auto p = statistical_complexity(dist);
          avg.h += p.h;
          avg.c += p.c;
        }
        avg.h /= static_cast<double>(dists.size());
        avg.c /= static_cast<double>(dists.size());
        rows.push_back({"noise:" + color.label, avg});
      } catch (const Error& e) {
        record(result, "chplane/" + wname + "/noise:" + color.label, e);
      }
    }
    const auto [lower, upper] = ch_boundaries(ordinal.d, config.resolution);

    const std::filesystem::path base = config.out / ("chplane_" + wname);
    if (config.format == OutputFormat::Csv) {
      std::ostringstream csv;
      csv << "label,h,c\n";
      for (const auto& row : rows) {
        csv << csv_escape(row.label) << ',' << fmt6(row.point.h) << ',' << fmt6(row.point.c) << '\n';
      }
      for (const auto* curve : {&lower, &upper}) {
        const char* label = curve->kind == BoundaryKind::Min ? "bound:min" : "bound:max";
        for (const auto& p : curve->points) {
          csv << label << ',' << fmt6(p.h) << ',' << fmt6(p.c) << '\n';
        }
      }
      result.files.push_back(write_text(base.string() + ".csv", csv.str()));
      for (const auto* curve : {&lower, &upper}) {
        std::ostringstream two;
        two << "h,c\n";
        for (const auto& p : curve->points) two << fmt6(p.h) << ',' << fmt6(p.c) << '\n';
        const char* suffix = curve->kind == BoundaryKind::Min ? "_min.csv" : "_max.csv";
        result.files.push_back(write_text(base.string() + suffix, two.str()));
      }
    } else {
      nlohmann::json j;
      j["window"] = wname;
      j["d"] = ordinal.d;
      j["points"] = nlohmann::json::array();
      for (const auto& row : rows) {
        j["points"].push_back({{"label", row.label}, {"h", row.point.h}, {"c", row.point.c}});
      }
      for (const auto* curve : {&lower, &upper}) {
        auto& arr = j[curve->kind == BoundaryKind::Min ? "min" : "max"];
        arr = nlohmann::json::array();
        for (const auto& p : curve->points) arr.push_back({p.h, p.c});
      }
      result.files.push_back(write_text(base.string() + ".json", j.dump(1)));
    }
  }
  return result;
}

CommandResult cmd_pjsd(const RunConfig& config) {
  require_seeds(config);
  const auto series = load_inputs(config);
  CommandResult result;
  NoiseBank bank(config);
  const auto& colors = reference_noises();
  for (Window window : windows_or(config, kFullWindow)) {
    const std::string wname(to_string(window));
    const OrdinalConfig ordinal = ordinal_config(config, window);
    struct Row {
      std::string name;
      std::vector<double> distances;
      std::size_t argmin = 0;
    };
    std::vector<Row> rows;
    for (const auto& s : series) {
      try {
        const auto segment = segment_for(s, window, config.split_date);
        const auto p = extract_patterns(segment, ordinal);
        Row row{s.name(), {}, 0};
        for (const auto& color : colors) {
          const auto& dists = bank.get(color.alpha, segment.size(), ordinal);
          double sum = 0.0;
          for (const auto& q : dists) sum += pjsd(p, q);
          row.distances.push_back(sum / static_cast<double>(dists.size()));
        }
        row.argmin = static_cast<std::size_t>(
            std::min_element(row.distances.begin(), row.distances.end()) - row.distances.begin());
        rows.push_back(std::move(row));
      } catch (const Error& e) {
        record(result, "pjsd/" + wname + "/" + s.name(), e);
      }
    }
    const std::filesystem::path base = config.out / ("pjsd_" + wname);
    if (config.format == OutputFormat::Csv) {
      std::ostringstream csv;
      csv << "series";
      for (const auto& color : colors) csv << ',' << color.label;
      csv << ",argmin\n";
      for (const auto& row : rows) {
        csv << csv_escape(row.name);
        for (double v : row.distances) csv << ',' << fmt6(v);
        csv << ',' << colors[row.argmin].label << '\n';
      }
      result.files.push_back(write_text(base.string() + ".csv", csv.str()));
    } else {
      nlohmann::json j;
      j["window"] = wname;
      j["d"] = ordinal.d;
      j["seeds"] = config.seeds;
      j["columns"] = nlohmann::json::array();
      for (const auto& color : colors) j["columns"].push_back(color.label);
      j["rows"] = nlohmann::json::array();
      for (const auto& row : rows) {
        j["rows"].push_back({{"series", row.name},
                             {"distances", row.distances},
                             {"argmin", colors[row.argmin].label}});
      }
      result.files.push_back(write_text(base.string() + ".json", j.dump(1)));
    }
  }
  return result;
}

CommandResult cmd_psd(const RunConfig& config) {
  const auto series = load_inputs(config);
  CommandResult result;
  for (Window window : windows_or(config, kFullWindow)) {
    const std::string wname(to_string(window));
    struct Row {
      std::string name;
      PowerLawFit fit;
    };
    std::vector<Row> rows;
    nlohmann::json spectra = nlohmann::json::object();
    for (const auto& s : series) {
      try {
        const auto segment = segment_for(s, window, config.split_date);
        const auto psd = welch_psd(segment, config.segment, config.overlap);
        const auto fit = fit_power_law(psd);
        rows.push_back({s.name(), fit});
        if (config.format == OutputFormat::Csv) {
          std::ostringstream csv;
          csv << "freq,power\n";
          for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
            csv << fmt6(psd.freqs[i]) << ',' << fmt6(psd.power[i]) << '\n';
          }
          result.files.push_back(write_text(
              config.out / ("psd_" + wname + "_" + safe_filename(s.name()) + ".csv"), csv.str()));
        } else {
          spectra[s.name()] = {{"freq", psd.freqs}, {"power", psd.power}};
        }
      } catch (const Error& e) {
        record(result, "psd/" + wname + "/" + s.name(), e);
      }
    }
    const std::filesystem::path base = config.out / ("psd_fits_" + wname);
    nlohmann::json fits = nlohmann::json::array();
    for (const auto& row : rows) {
      auto j = nlohmann::json::parse(to_json(row.fit));
      j["series"] = row.name;
      fits.push_back(std::move(j));
    }
    if (config.format == OutputFormat::Csv) {
      std::ostringstream csv;
      csv << "series,alpha,intercept,r2,f_lo,f_hi\n";
      for (const auto& row : rows) {
        csv << csv_escape(row.name) << ',' << fmt6(row.fit.alpha) << ',' << fmt6(row.fit.intercept)
            << ',' << fmt6(row.fit.r2) << ',' << fmt6(row.fit.band.lo) << ','
            << fmt6(row.fit.band.hi) << '\n';
      }
      result.files.push_back(write_text(base.string() + ".csv", csv.str()));
      result.files.push_back(write_text(base.string() + ".json", fits.dump(1)));
    } else {
      nlohmann::json j{{"window", wname}, {"fits", fits}, {"spectra", spectra}};
      result.files.push_back(write_text(config.out / ("psd_" + wname + ".json"), j.dump(1)));
    }
  }
  return result;
}

CommandResult cmd_noise(const RunConfig& config) {
  const TimeSeries x = config.integrate
                           ? brownian_by_integration(config.length, config.seed)
                           : generate_noise({config.alpha, config.length, config.seed});
  const std::string stem =
      (config.integrate ? std::string("walk") : "noise_alpha" + fmt6(config.alpha)) + "_n" +
      std::to_string(config.length) + "_seed" + std::to_string(config.seed);
  CommandResult result;
  if (config.format == OutputFormat::Csv) {
    std::ostringstream csv;
    csv << "index,value\n";
    for (std::size_t i = 0; i < x.size(); ++i) csv << i << ',' << fmt6(x.values()[i]) << '\n';
    result.files.push_back(write_text(config.out / (stem + ".csv"), csv.str()));
  } else {
    nlohmann::json j;
    j["alpha"] = config.integrate ? 2.0 : config.alpha;
    j["method"] = config.integrate ? "integration" : "spectral";
    j["length"] = config.length;
    j["seed"] = config.seed;
    j["values"] = std::vector<double>(x.values().begin(), x.values().end());
    result.files.push_back(write_text(config.out / (stem + ".json"), j.dump()));
  }
  return result;
}

BacktestReport run_backtest_grid(const std::vector<TimeSeries>& series,
                                 const std::vector<ForecasterSpec>& models,
                                 const std::vector<Window>& windows,
                                 const std::vector<int>& horizons, Date split_date,
                                 bool expanding) {
  struct Prepared {
    std::string error;
    TimeSeries history;
    TimeSeries target;
    std::size_t window = 0;
  };
  // (series, window) -> split pieces
  std::vector<Prepared> prepared(series.size() * windows.size());
  for (std::size_t si = 0; si < series.size(); ++si) {
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
      auto& prep = prepared[si * windows.size() + wi];
      try {
        const auto pieces = split(series[si], {split_date, windows[wi]});
        prep.window = pieces.train.size();
        prep.history = series[si].slice(0, series[si].upper_bound(split_date));
        prep.target = pieces.target;
      } catch (const Error& e) {
        prep.error = e.what();
      }
    }
  }

  struct Job {
    std::size_t model, series, window, horizon;
  };
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < models.size(); ++m) {
    for (std::size_t w = 0; w < windows.size(); ++w) {
      for (std::size_t s = 0; s < series.size(); ++s) {
        for (std::size_t h = 0; h < horizons.size(); ++h) jobs.push_back({m, s, w, h});
      }
    }
  }

  BacktestReport report;
  report.cells.resize(jobs.size());
  auto evaluate = [&](std::size_t index) {
    const Job& job = jobs[index];
    BacktestCell& cell = report.cells[index];
    cell.model = models[job.model].name();
    cell.series = series[job.series].name();
    cell.window = std::string(to_string(windows[job.window]));
    cell.horizon = horizons[job.horizon];
    const auto& prep = prepared[job.series * windows.size() + job.window];
    if (!prep.error.empty()) {
      cell.error = prep.error;
      return;
    }
    try {
      if (cell.horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
      // A window reaching before the first observation is shortened to fit.
      const std::size_t available = prep.history.size() + 1 -
                                    std::min(prep.history.size() + 1,
                                             static_cast<std::size_t>(cell.horizon));
      cell.train_window = std::min(prep.window, available);
      const BacktestSpec spec{models[job.model], cell.train_window, cell.horizon, expanding};
      auto result = run_backtest(spec, prep.history, prep.target);
      cell.mape = result.mape;
      cell.fallbacks = result.fallbacks;
      cell.trace = std::move(result.trace);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  };

  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) evaluate(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

CommandResult cmd_backtest(const RunConfig& config) {
  const auto series = load_inputs(config);
  const auto models = parse_model_list(config.models);
  if (config.horizons.empty()) throw Error(ErrorCode::InvalidArgument, "no horizons given");
  const auto& windows = windows_or(config, kPlaneWindows);
  const auto report =
      run_backtest_grid(series, models, windows, config.horizons, config.split_date, config.expanding);

  CommandResult result;
  for (const auto& cell : report.cells) {
    if (!cell.error.empty()) {
      result.errors.push_back({"backtest/" + cell.model + "/" + cell.series + "/" + cell.window +
                                   "/h" + std::to_string(cell.horizon),
                               "CellFailed", cell.error});
    }
  }

  // groups with fewer than two successful cells are left out of the aggregate
  std::map<std::pair<std::string, int>, std::size_t> successes;
  for (const auto& cell : report.cells) {
    if (cell.mape) ++successes[{cell.model, cell.horizon}];
  }
  BacktestReport usable;
  for (const auto& cell : report.cells) {
    if (successes[{cell.model, cell.horizon}] >= 2) usable.cells.push_back(cell);
  }
  const auto rows = aggregate(usable);

  if (config.format == OutputFormat::Csv) {
    std::ostringstream cells;
    cells << "model,series,window,horizon,mape,train_window,fallbacks,error\n";
    for (const auto& cell : report.cells) {
      cells << csv_escape(cell.model) << ',' << csv_escape(cell.series) << ',' << cell.window << ','
            << cell.horizon << ',' << (cell.mape ? fmt6(*cell.mape) : "") << ','
            << cell.train_window << ',' << cell.fallbacks << ',' << csv_escape(cell.error) << '\n';
      if (!cell.mape) continue;
      std::ostringstream trace;
      trace << "date,actual,forecast\n";
      for (const auto& p : cell.trace) {
        trace << format_date(p.date) << ',' << fmt6(p.actual) << ',' << fmt6(p.forecast) << '\n';
      }
      const std::string name = safe_filename(cell.model) + "__" + safe_filename(cell.series) +
                               "__" + cell.window + "__h" + std::to_string(cell.horizon) + ".csv";
      result.files.push_back(write_text(config.out / "traces" / name, trace.str()));
    }
    result.files.push_back(write_text(config.out / "backtest_cells.csv", cells.str()));

    std::ostringstream agg;
    agg << "model";
    for (int h : config.horizons) agg << ",h" << h << "_mean,h" << h << "_std,h" << h << "_n";
    agg << '\n';
    std::vector<std::string> model_order;
    for (const auto& m : models) {
      if (std::find(model_order.begin(), model_order.end(), m.name()) == model_order.end()) {
        model_order.push_back(m.name());
      }
    }
    for (const auto& model : model_order) {
      agg << csv_escape(model);
      for (int h : config.horizons) {
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow& r) {
          return r.model == model && r.horizon == h;
        });
        if (it == rows.end()) {
          agg << ",,,";
        } else {
          agg << ',' << fmt6(it->mean) << ',' << fmt6(it->stddev) << ',' << it->count;
        }
      }
      agg << '\n';
    }
    result.files.push_back(write_text(config.out / "backtest_aggregate.csv", agg.str()));
  } else {
    auto j = nlohmann::json::parse(report_to_json(report));
    j["aggregate"] = nlohmann::json::array();
    for (const auto& row : rows) {
      j["aggregate"].push_back({{"model", row.model},
                                {"horizon", row.horizon},
                                {"mean", row.mean},
                                {"std", row.stddev},
                                {"n", row.count}});
    }
    result.files.push_back(write_text(config.out / "backtest_report.json", j.dump(1)));
  }
  return result;
}

CommandResult cmd_report(const RunConfig& config) {
  CommandResult result = cmd_chplane(config);
  result.merge(cmd_pjsd(config));
  result.merge(cmd_psd(config));
  result.merge(cmd_backtest(config));
  return result;
}

}  // namespace noiseplane
