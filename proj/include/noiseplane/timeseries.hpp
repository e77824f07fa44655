#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noiseplane {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws InvalidArgument.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// A dated, real-valued daily series. Dates are strictly increasing and every
/// value is finite; calendar gaps are allowed and the series is treated as
/// evenly sampled by index.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::string name, std::vector<Date> dates, std::vector<double> values);

  /// Consecutive daily dates starting at `start`.
  static TimeSeries from_values(std::string name, std::vector<double> values,
                                Date start = Date{std::chrono::days{0}});

  const std::string& name() const noexcept { return name_; }
  std::span<const Date> dates() const noexcept { return dates_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  Date front_date() const;
  Date back_date() const;

  /// Half-open index range [begin, end).
  TimeSeries slice(std::size_t begin, std::size_t end) const;
  TimeSeries with_values(std::vector<double> values) const;
  TimeSeries renamed(std::string name) const;

  /// Index of the first date >= `date` (size() if none).
  std::size_t lower_bound(Date date) const;
  /// Index of the first date > `date` (size() if none).
  std::size_t upper_bound(Date date) const;

 private:
  std::string name_;
  std::vector<Date> dates_;
  std::vector<double> values_;
};

enum class Window { ThreeYears, OneYear, SixMonths, Full };

std::string_view to_string(Window window) noexcept;
/// Accepts "3y", "1y", "6m", "full".
Window parse_window(std::string_view text);

/// Training window start for a split date. Three-year and one-year windows
/// start one day before the calendar anniversary, six months starts on it, so
/// a 2023-07-04 split yields 2020-07-03, 2022-07-03 and 2023-01-04.
Date window_start(Window window, Date split_date, Date series_start);

struct SplitSpec {
  Date split_date;
  Window window = Window::Full;
};

struct Split {
  TimeSeries train;
  TimeSeries target;
};

/// train = window start <= date <= split date, target = date > split date.
/// Throws WindowOutOfRange when the split date or window start fall outside
/// the series, or when the target is empty and `allow_empty_target` is false.
Split split(const TimeSeries& series, const SplitSpec& spec,
            bool allow_empty_target = false);

/// Affine map to sample mean 0 and sample (n-1) standard deviation 1.
TimeSeries standardize(const TimeSeries& series);
std::vector<double> standardize(std::span<const double> values);

double mean(std::span<const double> values);
/// Sample standard deviation with the n-1 denominator.
double sample_stddev(std::span<const double> values);

// CSV ingestion ------------------------------------------------------------

/// Loads a dated series from a CSV file with a header row. The date column is
/// "Date"; `column` selects the value column (Yahoo Finance exports use
/// Date,Open,High,Low,Close,Adj Close,Volume). Quoted fields follow RFC 4180.
/// Rows are sorted by date on return.
TimeSeries load_csv(const std::filesystem::path& path,
                    std::string_view column = "Close");
TimeSeries parse_csv(std::string_view content, std::string_view column = "Close",
                     std::string name = {});

/// Two columns (Date, <name>), six decimal places.
void write_csv(std::ostream& out, const TimeSeries& series);
void write_csv(const std::filesystem::path& path, const TimeSeries& series);

/// Splits CSV text into records of fields (RFC 4180). Also records the 1-based
/// line number each record starts on.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};
std::vector<CsvRecord> parse_csv_records(std::string_view content);
std::string csv_escape(std::string_view field);

}  // namespace noiseplane
