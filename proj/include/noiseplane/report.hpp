#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noiseplane/backtest.hpp"
#include "noiseplane/timeseries.hpp"

namespace noiseplane {

enum class OutputFormat { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Everything a pipeline command needs. Empty `windows` means the command's
/// own default (three windows for chplane and backtest, full range otherwise).
struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::string column = "Close";
  std::vector<Window> windows;
  std::optional<int> d;  ///< overrides the per-window embedding dimension
  std::uint64_t seed = kDefaultSeed;
  std::size_t seeds = 10;
  std::filesystem::path out = "out";
  OutputFormat format = OutputFormat::Csv;
  std::string models = "naive_drift,naive_seasonal";
  std::vector<int> horizons{1, 7, 30};
  Date split_date = Date{std::chrono::year{2023} / std::chrono::July / 4};
  bool expanding = false;
  bool check_admissibility = true;
  std::size_t resolution = 256;  ///< boundary curve samples

  std::size_t segment = 256;
  double overlap = 0.5;

  // noise command
  double alpha = 2.0;
  std::size_t length = 16384;
  bool integrate = false;
};

/// Seed from NOISEPLANE_SEED, or kDefaultSeed when unset or unparseable.
std::uint64_t default_seed_from_env();

/// Applies the keys of a JSON config object on top of `config`.
void apply_config_json(RunConfig& config, const std::string& json_text);

struct CellError {
  std::string context;
  std::string code;
  std::string message;
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<CellError> errors;
  void merge(CommandResult other);
};

CommandResult cmd_chplane(const RunConfig& config);
CommandResult cmd_pjsd(const RunConfig& config);
CommandResult cmd_psd(const RunConfig& config);
CommandResult cmd_noise(const RunConfig& config);
CommandResult cmd_backtest(const RunConfig& config);
/// chplane + pjsd + psd + backtest into one output directory.
CommandResult cmd_report(const RunConfig& config);

/// Evaluates every (model, series, window, horizon) cell of the grid. Failing
/// cells keep their error text and the run continues.
BacktestReport run_backtest_grid(const std::vector<TimeSeries>& series,
                                 const std::vector<ForecasterSpec>& models,
                                 const std::vector<Window>& windows,
                                 const std::vector<int>& horizons, Date split_date,
                                 bool expanding = false);

std::string report_to_json(const BacktestReport& report);
BacktestReport report_from_json(const std::string& text);

/// Command-line entry point; returns the process exit code: 0 on success,
/// 1 on usage or fatal errors, 2 when some cells failed (see errors.json).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace noiseplane
