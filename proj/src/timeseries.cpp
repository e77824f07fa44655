#include "noiseplane/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "noiseplane/error.hpp"

namespace noiseplane {

namespace {

int parse_fixed_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad date '" + std::string(whole) + "'");
  }
  return value;
}

std::chrono::year_month_day clamp_day(std::chrono::year y, std::chrono::month m,
                                      std::chrono::day d) {
  std::chrono::year_month_day ymd{y, m, d};
  if (!ymd.ok()) {
    ymd = std::chrono::year_month_day{std::chrono::year_month_day_last{y / m / std::chrono::last}};
  }
  return ymd;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(ErrorCode::InvalidArgument, "bad date '" + std::string(text) + "'");
  }
  const int y = parse_fixed_int(text.substr(0, 4), text);
  const int m = parse_fixed_int(text.substr(5, 2), text);
  const int d = parse_fixed_int(text.substr(8, 2), text);
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw Error(ErrorCode::InvalidArgument, "bad date '" + std::string(text) + "'");
  }
  return Date{ymd};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

TimeSeries::TimeSeries(std::string name, std::vector<Date> dates,
                       std::vector<double> values)
    : name_(std::move(name)), dates_(std::move(dates)), values_(std::move(values)) {
  if (dates_.size() != values_.size()) {
    throw Error(ErrorCode::LengthMismatch, "dates and values differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite value at index " + std::to_string(i));
    }
    if (i > 0 && !(dates_[i - 1] < dates_[i])) {
      throw Error(dates_[i - 1] == dates_[i] ? ErrorCode::DuplicateDate
                                             : ErrorCode::InvalidArgument,
                  "dates not strictly increasing at " + format_date(dates_[i]));
    }
  }
}

TimeSeries TimeSeries::from_values(std::string name, std::vector<double> values,
                                   Date start) {
  std::vector<Date> dates(values.size());
  for (std::size_t i = 0; i < dates.size(); ++i) {
    dates[i] = start + std::chrono::days{static_cast<long>(i)};
  }
  return TimeSeries(std::move(name), std::move(dates), std::move(values));
}

Date TimeSeries::front_date() const {
  if (empty()) throw Error(ErrorCode::EmptySeries, "series '" + name_ + "' is empty");
  return dates_.front();
}

Date TimeSeries::back_date() const {
  if (empty()) throw Error(ErrorCode::EmptySeries, "series '" + name_ + "' is empty");
  return dates_.back();
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, size());
  begin = std::min(begin, end);
  TimeSeries out;
  out.name_ = name_;
  out.dates_.assign(dates_.begin() + static_cast<long>(begin),
                    dates_.begin() + static_cast<long>(end));
  out.values_.assign(values_.begin() + static_cast<long>(begin),
                     values_.begin() + static_cast<long>(end));
  return out;
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  return TimeSeries(name_, dates_, std::move(values));
}

TimeSeries TimeSeries::renamed(std::string name) const {
  TimeSeries out = *this;
  out.name_ = std::move(name);
  return out;
}

std::size_t TimeSeries::lower_bound(Date date) const {
  return static_cast<std::size_t>(std::lower_bound(dates_.begin(), dates_.end(), date) -
                                  dates_.begin());
}

std::size_t TimeSeries::upper_bound(Date date) const {
  return static_cast<std::size_t>(std::upper_bound(dates_.begin(), dates_.end(), date) -
                                  dates_.begin());
}

std::string_view to_string(Window window) noexcept {
  switch (window) {
    case Window::ThreeYears: return "3y";
    case Window::OneYear: return "1y";
    case Window::SixMonths: return "6m";
    case Window::Full: return "full";
  }
  return "full";
}

Window parse_window(std::string_view text) {
  if (text == "3y") return Window::ThreeYears;
  if (text == "1y") return Window::OneYear;
  if (text == "6m") return Window::SixMonths;
  if (text == "full") return Window::Full;
  throw Error(ErrorCode::InvalidArgument,
              "unknown window '" + std::string(text) + "' (expected 3y, 1y, 6m, full)");
}

Date window_start(Window window, Date split_date, Date series_start) {
  using namespace std::chrono;
  const year_month_day ymd{split_date};
  switch (window) {
    case Window::ThreeYears:
      return Date{clamp_day(ymd.year() - years{3}, ymd.month(), ymd.day())} - days{1};
    case Window::OneYear:
      return Date{clamp_day(ymd.year() - years{1}, ymd.month(), ymd.day())} - days{1};
    case Window::SixMonths: {
      const year_month shifted = ymd.year() / ymd.month() - months{6};
      return Date{clamp_day(shifted.year(), shifted.month(), ymd.day())};
    }
    case Window::Full:
      return series_start;
  }
  return series_start;
}

Split split(const TimeSeries& series, const SplitSpec& spec, bool allow_empty_target) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "cannot split an empty series");
  const Date first = series.front_date();
  const Date last = series.back_date();
  if (spec.split_date < first || spec.split_date > last) {
    throw Error(ErrorCode::WindowOutOfRange,
                "split date " + format_date(spec.split_date) + " outside series range " +
                    format_date(first) + ".." + format_date(last));
  }
  const Date start = window_start(spec.window, spec.split_date, first);
  if (start < first) {
    throw Error(ErrorCode::WindowOutOfRange,
                std::string(to_string(spec.window)) + " window starts " + format_date(start) +
                    ", before the series start " + format_date(first));
  }
  if (!(start < spec.split_date)) {
    throw Error(ErrorCode::WindowOutOfRange, "window start is not before the split date");
  }
  const std::size_t begin = series.lower_bound(start);
  const std::size_t cut = series.upper_bound(spec.split_date);
  Split out{series.slice(begin, cut), series.slice(cut, series.size())};
  if (out.target.empty() && !allow_empty_target) {
    throw Error(ErrorCode::WindowOutOfRange,
                "no target points after split date " + format_date(spec.split_date));
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "mean of empty range");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::SeriesTooShort, "standard deviation needs at least 2 values");
  }
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<double> standardize(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::SeriesTooShort, "standardize needs at least 2 values");
  }
  const double mu = mean(values);
  const double sd = sample_stddev(values);
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (!(sd > 1e-14 * scale) || sd == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "series is constant");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mu) / sd;
  return out;
}

TimeSeries standardize(const TimeSeries& series) {
  return series.with_values(standardize(series.values()));
}

}  // namespace noiseplane
