#include <charconv>
#include <cstdlib>
#include <string_view>

#include "json.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/report.hpp"

namespace noiseplane {

std::uint64_t default_seed_from_env() {
  const char* raw = std::getenv("NOISEPLANE_SEED");
  if (raw == nullptr) return kDefaultSeed;
  const std::string_view text(raw);
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return kDefaultSeed;
  return seed;
}

void CommandResult::merge(CommandResult other) {
  files.insert(files.end(), other.files.begin(), other.files.end());
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
}

void apply_config_json(RunConfig& config, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  try {
    if (j.contains("inputs")) {
      config.inputs.clear();
      for (const auto& p : j["inputs"]) config.inputs.emplace_back(p.get<std::string>());
    }
    if (j.contains("column")) config.column = j["column"].get<std::string>();
    if (j.contains("windows")) {
      config.windows.clear();
      for (const auto& w : j["windows"]) config.windows.push_back(parse_window(w.get<std::string>()));
    }
    if (j.contains("d")) config.d = j["d"].get<int>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("seeds")) config.seeds = j["seeds"].get<std::size_t>();
    if (j.contains("out")) config.out = j["out"].get<std::string>();
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f == "csv") config.format = OutputFormat::Csv;
      else if (f == "json") config.format = OutputFormat::Json;
      else throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
    }
    if (j.contains("models")) {
      if (j["models"].is_array()) {
        std::string joined;
        for (const auto& m : j["models"]) {
          if (!joined.empty()) joined += ",";
          joined += m.get<std::string>();
        }
        config.models = joined;
      } else {
        config.models = j["models"].get<std::string>();
      }
    }
    if (j.contains("horizons")) config.horizons = j["horizons"].get<std::vector<int>>();
    if (j.contains("split")) config.split_date = parse_date(j["split"].get<std::string>());
    if (j.contains("expanding")) config.expanding = j["expanding"].get<bool>();
    if (j.contains("check_admissibility")) {
      config.check_admissibility = j["check_admissibility"].get<bool>();
    }
    if (j.contains("resolution")) config.resolution = j["resolution"].get<std::size_t>();
    if (j.contains("segment")) config.segment = j["segment"].get<std::size_t>();
    if (j.contains("overlap")) config.overlap = j["overlap"].get<double>();
    if (j.contains("alpha")) config.alpha = j["alpha"].get<double>();
    if (j.contains("length")) config.length = j["length"].get<std::size_t>();
    if (j.contains("integrate")) config.integrate = j["integrate"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config value: ") + e.what());
  }
}

}  // namespace noiseplane
