#include "noiseplane/backtest.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "noiseplane/error.hpp"

namespace noiseplane {

namespace {

std::vector<double> joined_values(const TimeSeries& history, const TimeSeries& target) {
  std::vector<double> all(history.values().begin(), history.values().end());
  all.insert(all.end(), target.values().begin(), target.values().end());
  return all;
}

template <typename Model>
BacktestResult rolling_origin(Model&& model, std::size_t window, int horizon,
                              const TimeSeries& history, const TimeSeries& target,
                              bool expanding) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (window < 1) throw Error(ErrorCode::InvalidArgument, "window must be >= 1");
  if (target.empty()) throw Error(ErrorCode::WindowOutOfRange, "target is empty");
  if (!history.empty() && !(history.back_date() < target.front_date())) {
    throw Error(ErrorCode::InvalidArgument, "target must follow history");
  }
  const std::size_t split = history.size();
  const auto h = static_cast<std::size_t>(horizon);
  // First origin's last observation sits f_h steps before the first target.
  if (split + 1 < h + window) {
    throw Error(ErrorCode::InsufficientHistory,
                "window of " + std::to_string(window) + " samples at horizon " +
                    std::to_string(horizon) + " needs " + std::to_string(window + h - 1) +
                    " history points, have " + std::to_string(split));
  }
  const std::vector<double> all = joined_values(history, target);
  const std::size_t fixed_start = split + 1 - h - window;

  BacktestResult result;
  result.trace.reserve(target.size());
  std::vector<double> forecasts;
  forecasts.reserve(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    const std::size_t t = split + j;
    const std::size_t end = t + 1 - h;  // one past the last observation
    const std::size_t begin = expanding ? fixed_start : end - window;
    const std::span<const double> train(all.data() + begin, end - begin);
    const double value = model(train, horizon, result);
    forecasts.push_back(value);
    result.trace.push_back({target.dates()[j], target.values()[j], value});
  }
  result.mape = mape(forecasts, target.values());
  return result;
}

}  // namespace

BacktestResult run_backtest(const BacktestSpec& spec, const TimeSeries& history,
                            const TimeSeries& target) {
  spec.model.validate();
  if (spec.window < spec.model.min_train_length()) {
    throw Error(ErrorCode::InsufficientData, "window of " + std::to_string(spec.window) +
                                                 " samples is below the minimum for " +
                                                 spec.model.name());
  }
  auto model = [&](std::span<const double> train, int horizon, BacktestResult& result) {
    try {
      return fit_predict(spec.model, train, horizon).values.back();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularFit) throw;
      ++result.fallbacks;
      return naive_seasonal_forecast(train, 1, horizon).back();
    }
  };
  return rolling_origin(model, spec.window, spec.horizon, history, target, spec.expanding);
}

BacktestResult run_backtest(const ForecastFn& fn, std::size_t window, int horizon,
                            const TimeSeries& history, const TimeSeries& target,
                            bool expanding) {
  auto model = [&](std::span<const double> train, int h, BacktestResult& result) {
    std::vector<double> values;
    try {
      values = fn(train, h);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularFit) throw;
      ++result.fallbacks;
      return naive_seasonal_forecast(train, 1, h).back();
    }
    if (values.size() != static_cast<std::size_t>(h)) {
      throw Error(ErrorCode::LengthMismatch, "model returned the wrong number of forecasts");
    }
    return values.back();
  };
  return rolling_origin(model, window, horizon, history, target, expanding);
}

double mape(std::span<const double> forecasts, std::span<const double> actuals) {
  if (forecasts.size() != actuals.size() || actuals.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "forecasts (" + std::to_string(forecasts.size()) + ") and actuals (" +
                    std::to_string(actuals.size()) + ") must be equal and non-empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    if (actuals[i] == 0.0) {
      throw Error(ErrorCode::ZeroActual, "actual value is zero at index " + std::to_string(i));
    }
    sum += std::abs((forecasts[i] - actuals[i]) / actuals[i]);
  }
  return sum / static_cast<double>(actuals.size()) * 100.0;
}

std::vector<AggregateRow> aggregate(const BacktestReport& report) {
  std::vector<std::pair<std::string, int>> order;
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  for (const auto& cell : report.cells) {
    const auto key = std::make_pair(cell.model, cell.horizon);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    if (cell.mape) it->second.push_back(*cell.mape);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(order.size());
  for (const auto& key : order) {
    const auto& values = groups.at(key);
    if (values.size() < 2) {
      throw Error(ErrorCode::EmptyGroup, key.first + " at horizon " + std::to_string(key.second) +
                                             " has " + std::to_string(values.size()) +
                                             " successful cells, need 2");
    }
    AggregateRow row;
    row.model = key.first;
    row.horizon = key.second;
    row.count = values.size();
    row.mean = mean(values);
    row.stddev = sample_stddev(values);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace noiseplane
