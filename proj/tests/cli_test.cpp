#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "noiseplane/noise.hpp"
#include "noiseplane/report.hpp"

namespace noiseplane {
namespace {

namespace fs = std::filesystem;

const fs::path kData = NOISEPLANE_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "noiseplane");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("noiseplane_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const std::string kWalkA = (kData / "walk_a.csv").string();
const std::string kWalkB = (kData / "walk_b.csv").string();

TEST_F(CliTest, EmptyInputIsUsageError) {
  const auto r = cli({"chplane", "--out", dir_.string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
  EXPECT_NE(cli({}).code, 0);
  EXPECT_NE(cli({"nonsense"}).code, 0);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, ChplaneShape) {
  const auto r = cli({"chplane", "-i", kWalkA, "-i", kWalkB, "--out", dir_.string(), "--seeds", "2",
                      "--resolution", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* w : {"3y", "1y", "6m"}) {
    const auto rows = lines(dir_ / ("chplane_" + std::string(w) + ".csv"));
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0], "label,h,c");
    std::size_t points = 0, mins = 0, maxs = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].rfind("bound:min,", 0) == 0) ++mins;
      else if (rows[i].rfind("bound:max,", 0) == 0) ++maxs;
      else ++points;
    }
    EXPECT_EQ(points, 2u + 4u);
    EXPECT_GE(mins, 16u);
    EXPECT_GE(maxs, 16u);
    EXPECT_EQ(lines(dir_ / ("chplane_" + std::string(w) + "_min.csv"))[0], "h,c");
  }
}

TEST_F(CliTest, WhiteNoiseInputNearMaximumEntropy) {
  const auto noise = generate_noise({0.0, 1 << 15, 99}).renamed("white");
  const auto path = dir_ / "white.csv";
  write_csv(path, noise);
  const auto r = cli({"chplane", "-i", path.string(), "--column", "white", "--window", "full",
                      "--d", "5", "--seeds", "1", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(dir_ / "chplane_full.csv");
  ASSERT_GE(rows.size(), 2u);
  ASSERT_EQ(rows[1].rfind("white,", 0), 0u);
  const double h = std::stod(rows[1].substr(6));
  EXPECT_GT(h, 0.97);
}

TEST_F(CliTest, PjsdDuplicateSeriesIdenticalRows) {
  const auto r = cli({"pjsd", "-i", kWalkA, "-i", kWalkA, "--seeds", "3", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(dir_ / "pjsd_full.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "series,white,pink,brownian,f-2.5,f-3,argmin");
  EXPECT_EQ(rows[1], rows[2]);
  EXPECT_NE(rows[1].find(",brownian"), std::string::npos);
}

TEST_F(CliTest, NoiseDeterministic) {
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  ASSERT_EQ(cli({"noise", "--alpha", "2", "--length", "16384", "--seed", "7", "--out", a.string()}).code, 0);
  ASSERT_EQ(cli({"noise", "--alpha", "2", "--length", "16384", "--seed", "7", "--out", b.string()}).code, 0);
  const auto name = "noise_alpha2_n16384_seed7.csv";
  const auto content = slurp(a / name);
  EXPECT_EQ(content, slurp(b / name));
  EXPECT_EQ(content.rfind("index,value\n0,", 0), 0u);
  EXPECT_EQ(lines(a / name).size(), 16385u);
}

TEST_F(CliTest, SeedPrecedence) {
  ::setenv("NOISEPLANE_SEED", "5", 1);
  ASSERT_EQ(cli({"noise", "--length", "64", "--out", dir_.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "noise_alpha2_n64_seed5.csv"));

  const auto config = dir_ / "config.json";
  std::ofstream(config) << R"({"seed": 11, "length": 32, "alpha": 1})";
  ASSERT_EQ(cli({"noise", "--config", config.string(), "--out", dir_.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "noise_alpha1_n32_seed11.csv"));

  ASSERT_EQ(cli({"noise", "--config", config.string(), "--seed", "12", "--out", dir_.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "noise_alpha1_n32_seed12.csv"));
  ::unsetenv("NOISEPLANE_SEED");

  EXPECT_EQ(cli({"noise", "--config", (dir_ / "missing.json").string()}).code, 1);
}

TEST_F(CliTest, PsdFits) {
  const auto r = cli({"psd", "-i", kWalkA, "-i", kWalkB, "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "psd_full_walk_a.csv"));
  const auto fits = nlohmann::json::parse(slurp(dir_ / "psd_fits_full.json"));
  ASSERT_EQ(fits.size(), 2u);
  for (const auto& f : fits) {
    EXPECT_GT(f["alpha"].get<double>(), 1.4);
    EXPECT_LT(f["alpha"].get<double>(), 2.6);
    EXPECT_EQ(f["band"].size(), 2u);
  }
}

TEST_F(CliTest, BacktestOutputs) {
  const auto r = cli({"backtest", "-i", kWalkA, "-i", kWalkB, "--models", "naive_drift,naive_seasonal",
                      "--horizons", "1,7", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cells = lines(dir_ / "backtest_cells.csv");
  EXPECT_EQ(cells.size(), 1u + 2u * 2u * 3u * 2u);
  EXPECT_EQ(cells[0].rfind("model,series,window,horizon,mape", 0), 0u);
  const auto agg = lines(dir_ / "backtest_aggregate.csv");
  ASSERT_EQ(agg.size(), 3u);
  EXPECT_EQ(agg[0], "model,h1_mean,h1_std,h1_n,h7_mean,h7_std,h7_n");
  EXPECT_EQ(agg[1].rfind("NaiveDrift,", 0), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "traces" / "NaiveSeasonal__walk_a__3y__h7.csv"));
  EXPECT_EQ(lines(dir_ / "traces" / "NaiveSeasonal__walk_a__3y__h7.csv").size(), 171u);

  const auto json_dir = dir_ / "json";
  ASSERT_EQ(cli({"backtest", "-i", kWalkA, "-i", kWalkB, "--horizons", "1", "--format", "json",
                 "--out", json_dir.string()}).code, 0);
  const auto report = report_from_json(slurp(json_dir / "backtest_report.json"));
  EXPECT_EQ(report.cells.size(), 2u * 2u * 3u);
}

TEST_F(CliTest, CellErrorsProduceManifest) {
  const auto full = load_csv(kWalkA);
  const auto recent = full.slice(full.size() - 400, full.size()).renamed("recent");
  const auto path = dir_ / "recent.csv";
  write_csv(path, recent);
  const auto r = cli({"backtest", "-i", path.string(), "-i", kWalkA, "--column", "recent",
                      "--horizons", "1", "--out", dir_.string()});
  EXPECT_EQ(r.code, 1);  // walk_a has no "recent" column

  const auto ok = cli({"backtest", "-i", path.string(), "--column", "recent", "--horizons", "1",
                       "--out", dir_.string()});
  EXPECT_EQ(ok.code, 2);
  const auto errors = nlohmann::json::parse(slurp(dir_ / "errors.json"));
  ASSERT_FALSE(errors.empty());
  EXPECT_NE(errors[0]["context"].get<std::string>().find("recent/3y"), std::string::npos);
  const auto cells = lines(dir_ / "backtest_cells.csv");
  EXPECT_EQ(cells.size(), 1u + 2u * 3u);
}

TEST_F(CliTest, ReportIsByteIdenticalOnRerun) {
  const auto cfg = dir_ / "run.json";
  std::ofstream(cfg) << R"({"inputs": [")" << kWalkA << R"(", ")" << kWalkB
                     << R"("], "seeds": 2, "horizons": [1, 7], "models": ["naive_seasonal", "ses"]})";
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  ASSERT_EQ(cli({"report", "--config", cfg.string(), "--out", a.string()}).code, 0);
  ASSERT_EQ(cli({"report", "--config", cfg.string(), "--out", b.string()}).code, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto rel = fs::relative(entry.path(), a);
    EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
  }
  EXPECT_GT(files, 10u);
}

}  // namespace
}  // namespace noiseplane
