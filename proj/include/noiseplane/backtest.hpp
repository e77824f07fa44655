#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noiseplane/forecast.hpp"
#include "noiseplane/timeseries.hpp"

namespace noiseplane {

struct BacktestSpec {
  ForecasterSpec model;
  std::size_t window = 0;  ///< t_w, training samples per fit
  int horizon = 1;         ///< f_h
  /// Grow the training set from the first origin's window start instead of
  /// sliding a fixed-length window.
  bool expanding = false;
};

struct TracePoint {
  Date date;
  double actual = 0.0;
  double forecast = 0.0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct BacktestResult {
  std::vector<TracePoint> trace;
  double mape = 0.0;
  /// Origins where the model raised SingularFit and NaiveSeasonal(K=1) was used.
  std::size_t fallbacks = 0;
};

/// Fits on a training window and returns `horizon` forecasts.
using ForecastFn = std::function<std::vector<double>(std::span<const double> window, int horizon)>;

/// Rolling-origin evaluation. For target point t the model sees the `window`
/// samples ending f_h steps before t, forecasts f_h steps, and only the f_h-th
/// value is scored. `history` holds every observation up to the split and may
/// extend before the training window; target follows it directly.
/// Throws InsufficientHistory when a window would start before `history`. A
/// SingularFit at any origin falls back to NaiveSeasonal(1) and is counted.
BacktestResult run_backtest(const BacktestSpec& spec, const TimeSeries& history,
                            const TimeSeries& target);

/// Same loop with an arbitrary model; `window` and `horizon` come from the
/// arguments.
BacktestResult run_backtest(const ForecastFn& model, std::size_t window, int horizon,
                            const TimeSeries& history, const TimeSeries& target,
                            bool expanding = false);

/// (1/T) sum |f - a| / |a| * 100. Throws LengthMismatch and ZeroActual.
double mape(std::span<const double> forecasts, std::span<const double> actuals);

/// One evaluated (model, series, window, horizon) combination.
struct BacktestCell {
  std::string model;
  std::string series;
  std::string window;
  int horizon = 1;
  std::size_t train_window = 0;  ///< effective t_w in samples
  std::optional<double> mape;    ///< empty when the cell failed
  std::size_t fallbacks = 0;
  std::string error;             ///< non-empty when the cell failed
  std::vector<TracePoint> trace;
};

struct BacktestReport {
  std::vector<BacktestCell> cells;
};

struct AggregateRow {
  std::string model;
  int horizon = 1;
  double mean = 0.0;
  double stddev = 0.0;  ///< sample (n-1) standard deviation
  std::size_t count = 0;
};

/// Mean and sample standard deviation of MAPE over the successful cells of
/// each (model, horizon), in first-appearance order. Throws EmptyGroup when a
/// group has fewer than two successful cells.
std::vector<AggregateRow> aggregate(const BacktestReport& report);

}  // namespace noiseplane
