#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noiseplane/error.hpp"
#include "noiseplane/timeseries.hpp"

namespace noiseplane {

std::vector<CsvRecord> parse_csv_records(std::string_view content) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line yields one empty field; skip it.
    if (!(current.fields.size() == 1 && current.fields[0].empty())) {
      records.push_back(std::move(current));
    }
    current = CsvRecord{};
    current.line = line;
  };

  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char ch = content[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field.push_back(ch);
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::MalformedRow, "unterminated quoted field", current.line);
  }
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

}  // namespace

TimeSeries parse_csv(std::string_view content, std::string_view column, std::string name) {
  const auto records = parse_csv_records(content);
  if (records.empty()) throw Error(ErrorCode::EmptySeries, "no header row");

  const auto& header = records.front().fields;
  auto find_col = [&](std::string_view wanted) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == wanted) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };
  const auto date_col = find_col("Date");
  const auto value_col = find_col(column);
  if (date_col < 0) {
    throw Error(ErrorCode::MalformedRow, "header has no 'Date' column", records.front().line);
  }
  if (value_col < 0) {
    throw Error(ErrorCode::MalformedRow,
                "header has no '" + std::string(column) + "' column", records.front().line);
  }

  std::vector<std::pair<Date, double>> rows;
  rows.reserve(records.size());
  std::vector<std::size_t> lines;
  lines.reserve(records.size());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto need = static_cast<std::size_t>(std::max(date_col, value_col));
    if (rec.fields.size() <= need) {
      throw Error(ErrorCode::MalformedRow, "too few fields", rec.line);
    }
    Date date;
    try {
      date = parse_date(trim(rec.fields[static_cast<std::size_t>(date_col)]));
    } catch (const Error&) {
      throw Error(ErrorCode::MalformedRow,
                  "unparseable date '" + rec.fields[static_cast<std::size_t>(date_col)] + "'",
                  rec.line);
    }
    double value = 0.0;
    if (!parse_double(rec.fields[static_cast<std::size_t>(value_col)], value)) {
      throw Error(ErrorCode::MalformedRow,
                  "unparseable value '" + rec.fields[static_cast<std::size_t>(value_col)] +
                      "' in column " + std::string(column),
                  rec.line);
    }
    rows.emplace_back(date, value);
    lines.push_back(rec.line);
  }
  if (rows.size() < 2) {
    throw Error(ErrorCode::EmptySeries,
                "need at least 2 valid rows, found " + std::to_string(rows.size()));
  }

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].first < rows[b].first; });

  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& [date, value] = rows[order[k]];
    if (!dates.empty() && dates.back() == date) {
      throw Error(ErrorCode::DuplicateDate, "duplicate date " + format_date(date),
                  lines[order[k]]);
    }
    dates.push_back(date);
    values.push_back(value);
  }
  if (name.empty()) name = std::string(column);
  return TimeSeries(std::move(name), std::move(dates), std::move(values));
}

TimeSeries load_csv(const std::filesystem::path& path, std::string_view column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), column, path.stem().string());
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << "Date," << csv_escape(series.name().empty() ? "value" : series.name()) << '\n';
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", series.values()[i]);
    out << format_date(series.dates()[i]) << ',' << buf << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path.string());
  write_csv(out, series);
}

}  // namespace noiseplane
