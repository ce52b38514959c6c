#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwalk/cli.hpp"

using namespace qwalk;
using namespace qwalk::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("qwalk_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, IdealCsvFirstStep) {
  TempDir dir;
  const std::string out = dir.file("ideal.csv");
  ASSERT_EQ(run_cli({"--mode", "ideal", "--steps", "100", "--coin", "symmetric", "--output", out}), 0);
  const auto rows = csv_rows(slurp(out));
  ASSERT_GT(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"iteration", "ell", "probability_or_power"}));
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows[1][1], "-1");
  EXPECT_NEAR(std::stod(rows[1][2]), 0.5, 1e-12);
  EXPECT_EQ(rows[2][1], "1");
  EXPECT_NEAR(std::stod(rows[2][2]), 0.5, 1e-12);
  // Populated sites only: iteration n has n + 1 rows.
  EXPECT_EQ(rows.size(), 1u + 100u * 103u / 2u);
}

TEST(Cli, RingDetectedPowerColumn) {
  TempDir dir;
  const std::string out = dir.file("ring.csv");
  ASSERT_EQ(run_cli({"--mode", "ring", "--steps", "20", "--mu", "0.5", "--output", out}), 0);
  const auto rows = csv_rows(slurp(out));
  EXPECT_EQ(rows[0].back(), "clipped_power");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int n = std::stoi(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][3]), 0.25 * std::pow(0.5, n - 1), 1e-12);
  }
}

TEST(Cli, HomReport) {
  TempDir dir;
  const std::string out = dir.file("hom.json");
  ASSERT_EQ(run_cli({"--mode", "hom", "--output", out}), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_LT(j.at("coincidence_amplitude").get<double>(), 1e-12);
  EXPECT_NEAR(j.at("distinguishable_coincidence_probability").get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j.at("terms").size(), 6u);
}

TEST(Cli, JsonRoundTripAndDeterminism) {
  TempDir dir;
  const std::string a = dir.file("a.json");
  const std::string b = dir.file("b.json");
  const std::vector<std::string> args{"--mode", "ring", "--steps", "30", "--mu", "0.3", "--coin", "random", "--seed", "7",
                                      "--format", "json"};
  auto with_output = [&](const std::string& path) {
    auto v = args;
    v.push_back("--output");
    v.push_back(path);
    return v;
  };
  ASSERT_EQ(run_cli(with_output(a)), 0);
  ASSERT_EQ(run_cli(with_output(b)), 0);
  EXPECT_EQ(slurp(a), slurp(b));

  RunConfig cfg;
  cfg.mode = RunMode::Ring;
  cfg.steps = 30;
  cfg.mu = 0.3;
  cfg.coin = "random";
  cfg.seed = 7;
  const auto records = simulate(cfg);
  EXPECT_EQ(records_from_json(nlohmann::json::parse(slurp(a))), records);
}

TEST(Cli, ConfigFileMatchesFlags) {
  TempDir dir;
  const std::string cfg_path = dir.file("cfg.json");
  std::ofstream(cfg_path) << R"({"mode": "coherent", "steps": 5, "alpha": [0, 2], "coin": [[0.6, 0], [0, 0.8]]})";
  const std::string from_file = dir.file("file.csv");
  const std::string from_flags = dir.file("flags.csv");
  ASSERT_EQ(run_cli({"--config", cfg_path, "--output", from_file}), 0);
  ASSERT_EQ(run_cli({"--mode", "coherent", "--steps", "5", "--alpha", "0,2", "--coin", "0.6,0,0,0.8", "--output", from_flags}), 0);
  EXPECT_EQ(slurp(from_file), slurp(from_flags));
  // Total mean photon number |alpha|^2 = 4 per step.
  double total = 0.0;
  for (const auto& row : csv_rows(slurp(from_file))) {
    if (row[0] == "5") total += std::stod(row[2]);
  }
  EXPECT_NEAR(total, 4.0, 1e-10);
}

TEST(Cli, BadConfigurationsExitWithOne) {
  EXPECT_EQ(run_cli({"--mode", "sideways"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ideal", "--q", "0.3"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ring", "--mu", "0"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ring", "--mu", "1.5"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ideal", "--mu", "0.5"}), 1);
  EXPECT_EQ(run_cli({"--mode", "hom", "--format", "csv"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ideal", "--coin", "1,0,1,0"}), 1);
  EXPECT_EQ(run_cli({"--mode", "ideal", "--steps", "0"}), 1);
  EXPECT_EQ(run_cli({"--no-such-flag"}), 1);
  EXPECT_EQ(run_cli({"--config", "/nonexistent/cfg.json"}), 1);
}

TEST(Cli, UnwritableOutputExitsWithTwo) {
  EXPECT_EQ(run_cli({"--mode", "ideal", "--steps", "3", "--output", "/nonexistent-dir/out.csv"}), 2);
}

TEST(Cli, SweepSubcommand) {
  TempDir dir;
  const std::string par = dir.file("par.json");
  const std::string ser = dir.file("ser.json");
  ASSERT_EQ(run_cli({"sweep", "--trials", "6", "--steps", "10", "--seed", "3", "--output", par}), 0);
  ASSERT_EQ(run_cli({"sweep", "--trials", "6", "--steps", "10", "--seed", "3", "--serial", "--output", ser}), 0);
  EXPECT_EQ(slurp(par), slurp(ser));
  const auto j = nlohmann::json::parse(slurp(par));
  EXPECT_EQ(j.at("trials").size(), 6u);
}

TEST(EmitSpectrumTable, SchemaAndOmission) {
  IterationRecord r;
  r.iteration = 1;
  r.detected_power = 1.0;
  r.spectrum = {{-1, 0.5}, {1, 0.5}};
  std::ostringstream csv;
  emit_spectrum_table(csv, {r}, OutputFormat::Csv, false);
  EXPECT_EQ(csv.str(), "iteration,ell,probability_or_power\n1,-1,0.5\n1,1,0.5\n");
  std::ostringstream ring;
  emit_spectrum_table(ring, {r}, OutputFormat::Csv, true);
  EXPECT_EQ(csv_rows(ring.str())[0].size(), 5u);
  std::ostringstream none;
  EXPECT_THROW(emit_spectrum_table(none, {}, OutputFormat::Csv, false), std::invalid_argument);
}

TEST(Cli, BinaryRunsEndToEnd) {
  TempDir dir;
  const std::string out = dir.file("bin.csv");
  const std::string cmd = std::string(QWALK_CLI_PATH) + " --mode jones --steps 3 --output " + out;
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(csv_rows(slurp(out)).size(), 1u + 2u + 3u + 4u);
  const std::string bad = std::string(QWALK_CLI_PATH) + " --mode ring --mu 2 2>/dev/null";
  EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 1);
}
