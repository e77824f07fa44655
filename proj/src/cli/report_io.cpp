#include "json.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/report.hpp"

namespace noiseplane {

std::string report_to_json(const BacktestReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : report.cells) {
    nlohmann::json c;
    c["model"] = cell.model;
    c["series"] = cell.series;
    c["window"] = cell.window;
    c["horizon"] = cell.horizon;
    c["train_window"] = cell.train_window;
    c["mape"] = cell.mape ? nlohmann::json(*cell.mape) : nlohmann::json(nullptr);
    c["fallbacks"] = cell.fallbacks;
    c["error"] = cell.error;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& p : cell.trace) {
      trace.push_back({{"date", format_date(p.date)}, {"actual", p.actual}, {"forecast", p.forecast}});
    }
    c["trace"] = std::move(trace);
    cells.push_back(std::move(c));
  }
  nlohmann::json j;
  j["cells"] = std::move(cells);
  return j.dump(1);
}

BacktestReport report_from_json(const std::string& text) {
  BacktestReport report;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& c : j.at("cells")) {
      BacktestCell cell;
      cell.model = c.at("model").get<std::string>();
      cell.series = c.at("series").get<std::string>();
      cell.window = c.at("window").get<std::string>();
      cell.horizon = c.at("horizon").get<int>();
      cell.train_window = c.at("train_window").get<std::size_t>();
      if (!c.at("mape").is_null()) cell.mape = c["mape"].get<double>();
      cell.fallbacks = c.at("fallbacks").get<std::size_t>();
      cell.error = c.at("error").get<std::string>();
      for (const auto& p : c.at("trace")) {
        cell.trace.push_back({parse_date(p.at("date").get<std::string>()),
                              p.at("actual").get<double>(), p.at("forecast").get<double>()});
      }
      report.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad report JSON: ") + e.what());
  }
  return report;
}

}  // namespace noiseplane
