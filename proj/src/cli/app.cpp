#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "format.hpp"
#include "json.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/report.hpp"

namespace noiseplane {

namespace {

struct Flags {
  std::vector<std::string> inputs;
  std::string column;
  std::vector<std::string> windows;
  int d = 0;
  std::uint64_t seed = 0;
  std::size_t seeds = 0;
  std::string out;
  std::string format;
  std::string config;
  std::string models;
  std::vector<int> horizons;
  std::string split;
  bool expanding = false;
  bool no_admissibility = false;
  std::size_t resolution = 0;
  std::size_t segment = 0;
  double overlap = 0.0;
  double alpha = 0.0;
  std::size_t length = 0;
  bool integrate = false;
};

struct Options {
  std::map<std::string, CLI::Option*> by_name;
  bool given(const std::string& name) const {
    auto it = by_name.find(name);
    return it != by_name.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App& sub, Flags& f, bool series_input) {
  sub.add_option("--config", f.config, "JSON config file");
  sub.add_option("--out", f.out, "output directory (default: out)");
  sub.add_option("--format", f.format, "csv or json")
                            ->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--seed", f.seed, "base RNG seed");
  if (!series_input) return;
  sub.add_option("--input,-i", f.inputs, "input CSV (repeatable)");
  sub.add_option("--column", f.column, "value column (default: Close)");
  sub.add_option("--window,-w", f.windows, "3y, 1y, 6m or full (repeatable)")
          ->check(CLI::IsMember({"3y", "1y", "6m", "full"}));
  sub.add_option("--split", f.split, "split date (default: 2023-07-04)");
}

void add_ordinal(CLI::App& sub, Flags& f) {
  sub.add_option("--d", f.d, "embedding dimension (default: by window)")
                       ->check(CLI::Range(2, 10));
  sub.add_option("--seeds", f.seeds, "noise realizations per colour");
  sub.add_flag("--no-admissibility", f.no_admissibility, "allow n < 5 d!");
}

RunConfig build_config(const Flags& f, const Options& o) {
  RunConfig config;
  config.seed = default_seed_from_env();
  if (o.given("config")) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "config file not found: " + f.config);
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_json(config, text.str());
  }
  if (o.given("input")) {
    config.inputs.assign(f.inputs.begin(), f.inputs.end());
  }
  if (o.given("column")) config.column = f.column;
  if (o.given("window")) {
    config.windows.clear();
    for (const auto& w : f.windows) config.windows.push_back(parse_window(w));
  }
  if (o.given("d")) config.d = f.d;
  if (o.given("seed")) config.seed = f.seed;
  if (o.given("seeds")) config.seeds = f.seeds;
  if (o.given("out")) config.out = f.out;
  if (o.given("format")) config.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (o.given("models")) config.models = f.models;
  if (o.given("horizons")) config.horizons = f.horizons;
  if (o.given("split")) config.split_date = parse_date(f.split);
  if (o.given("expanding")) config.expanding = true;
  if (o.given("no-admissibility")) config.check_admissibility = false;
  if (o.given("resolution")) config.resolution = f.resolution;
  if (o.given("segment")) config.segment = f.segment;
  if (o.given("overlap")) config.overlap = f.overlap;
  if (o.given("alpha")) config.alpha = f.alpha;
  if (o.given("length")) config.length = f.length;
  if (o.given("integrate")) config.integrate = true;
  return config;
}

void write_errors(const RunConfig& config, const std::vector<CellError>& errors) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : errors) {
    j.push_back({{"context", e.context}, {"code", e.code}, {"message", e.message}});
  }
  cli::write_text(config.out / "errors.json", j.dump(1) + "\n");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordinal-pattern and spectral analysis of price series"};
  app.require_subcommand(1);
  Flags f;

  auto* chplane = app.add_subcommand("chplane", "complexity-entropy plane with noise references");
  add_common(*chplane, f, true);
  add_ordinal(*chplane, f);
  chplane->add_option("--resolution", f.resolution, "boundary curve samples (default: 256)");

  auto* pjsd = app.add_subcommand("pjsd", "distances to reference noise colours");
  add_common(*pjsd, f, true);
  add_ordinal(*pjsd, f);

  auto* psd = app.add_subcommand("psd", "Welch spectrum and power-law exponent");
  add_common(*psd, f, true);
  psd->add_option("--segment", f.segment, "Welch segment length");
  psd->add_option("--overlap", f.overlap, "segment overlap in [0, 1)");

  auto* noise = app.add_subcommand("noise", "generate a 1/f^alpha noise series");
  add_common(*noise, f, false);
  noise->add_option("--alpha", f.alpha, "spectral exponent (default: 2)");
  noise->add_option("--length,-n", f.length, "samples (default: 16384)");
  noise->add_flag("--integrate", f.integrate, "Brownian walk by integrating white noise");

  auto add_backtest = [&](CLI::App& sub) {
    sub.add_option("--models", f.models, "comma-separated forecasters");
    sub.add_option("--horizons", f.horizons, "forecast horizons (default: 1 7 30)")
            ->delimiter(',');
    sub.add_flag("--expanding", f.expanding, "expanding window");
  };
  auto* backtest = app.add_subcommand("backtest", "walk-forward forecast evaluation");
  add_common(*backtest, f, true);
  add_backtest(*backtest);

  auto* report = app.add_subcommand("report", "chplane, pjsd, psd and backtest together");
  add_common(*report, f, true);
  add_ordinal(*report, f);
  add_backtest(*report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, error;
    const int code = app.exit(e, help, error);
    out << help.str();
    err << error.str();
    return code == 0 ? 0 : 1;
  }

  CLI::App* active = app.get_subcommands().front();
  Options given;
  for (CLI::Option* opt : active->get_options()) {
    for (const auto& name : opt->get_lnames()) given.by_name[name] = opt;
  }

  using Command = std::function<CommandResult(const RunConfig&)>;
  const std::map<std::string, Command> commands{
      {"chplane", cmd_chplane}, {"pjsd", cmd_pjsd},         {"psd", cmd_psd},
      {"noise", cmd_noise},     {"backtest", cmd_backtest}, {"report", cmd_report}};

  RunConfig config;
  try {
    config = build_config(f, given);
    if (active != noise && config.inputs.empty()) {
      err << "error: at least one --input is required\n";
      return 1;
    }
    const CommandResult result = commands.at(active->get_name())(config);
    for (const auto& file : result.files) out << file.string() << '\n';
    if (!result.errors.empty()) {
      write_errors(config, result.errors);
      for (const auto& e : result.errors) err << e.context << ": " << e.message << '\n';
      return 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace noiseplane
