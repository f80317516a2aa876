#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "keyregion/cli.hpp"

namespace fs = std::filesystem;
using namespace keyregion;
using namespace keyregion::cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("keyregion_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    o_.out = (dir_ / "out").string();
    o_.out_stream = &out_;
    o_.err_stream = &err_;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::size_t lines(const fs::path& p) {
    const std::string s = slurp(p);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  fs::path dir_;
  Options o_;
  std::ostringstream out_, err_;
};

const char* kRegion = R"({
  "channel": {"family": "binary_sum", "params": {"p1": 0.09, "p2": 0.1, "p3": 0.07}},
  "design_family": "example2",
  "grid": [{"name": "alpha", "lo": 0, "hi": 0.5, "step": 0.25}, {"name": "beta", "lo": 0, "hi": 0.5, "step": 0.25}],
  "projections": [["R12", "R23"]],
  "hull": true
})";

const char* kSimulate = R"({
  "channel": {"family": "erasure", "params": {"p12": 0.3, "p21": 0.3, "p13": 0.5, "p23": 0.1}},
  "design": {"family": "example1"},
  "n": 8, "trials": 40, "seed": 42,
  "key_rates": {"12": 0.1, "23": 0.1},
  "randomization_rates": {"12": 0.25, "23": 0.35}
})";

}  // namespace

TEST_F(CliTest, RegionWritesCsvAndManifest) {
  o_.config = write("region.json", kRegion);
  ASSERT_EQ(cmd_region(o_), kExitOk) << err_.str();
  const fs::path out = o_.out;
  EXPECT_EQ(lines(out / "region.csv"), 10u);  // header + 3 x 3
  EXPECT_EQ(slurp(out / "region.csv").substr(0, 16), "alpha,beta,bound");
  EXPECT_TRUE(fs::exists(out / "region_R12_R23.csv"));
  const Json m = Json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(m["command"], "region");
  EXPECT_EQ(m["outputs"].size(), 2u);
  EXPECT_TRUE(m.contains("tool_version"));
  EXPECT_TRUE(m.contains("timestamp"));
}

TEST_F(CliTest, RegionSinglePointGrid) {
  o_.config = write("one.json", R"({
    "channel": {"family": "binary_sum", "params": {"p1": 0.09, "p2": 0.1, "p3": 0.07}},
    "design_family": "example2",
    "grid": [{"name": "alpha", "lo": 0.2, "hi": 0.2}, {"name": "beta", "lo": 0.3, "hi": 0.3}]
  })");
  ASSERT_EQ(cmd_region(o_), kExitOk) << err_.str();
  EXPECT_EQ(lines(fs::path(o_.out) / "region.csv"), 2u);
}

TEST_F(CliTest, RegionUsageErrors) {
  o_.config = write("empty.json", R"({"channel": {"family": "binary_sum", "params": {"p1": 0.1, "p2": 0.1, "p3": 0.1}},
                                      "design_family": "example2", "grid": []})");
  EXPECT_EQ(cmd_region(o_), kExitUsage);
  o_.config = write("nochan.json", R"({"design_family": "example2"})");
  EXPECT_EQ(cmd_region(o_), kExitUsage);
  EXPECT_NE(err_.str().find("channel"), std::string::npos);
  o_.config = (dir_ / "missing.json").string();
  EXPECT_EQ(cmd_region(o_), kExitUsage);
  o_.config = write("bad.json", "{ not json");
  EXPECT_EQ(cmd_region(o_), kExitUsage);
}

TEST_F(CliTest, RegionBudgetExceeded) {
  o_.config = write("region.json", kRegion);
  o_.grid_step = 0.001;
  o_.budget = 1000;
  EXPECT_EQ(cmd_region(o_), kExitFailure);
}

TEST_F(CliTest, FigureSix) {
  o_.figure = "fig6";
  o_.grid_step = 0.1;
  ASSERT_EQ(cmd_figure(o_), kExitOk) << err_.str();
  const std::string csv = slurp(fs::path(o_.out) / "fig6_R12_R23.csv");
  EXPECT_NE(csv.find("inner,"), std::string::npos);
  EXPECT_NE(csv.find("timeshare,"), std::string::npos);
}

TEST_F(CliTest, FigureUnknownIsUsageError) {
  o_.figure = "fig99";
  EXPECT_EQ(cmd_figure(o_), kExitUsage);
  o_.figure = "fig6";
  o_.params = "0.1,0.2";
  EXPECT_EQ(cmd_figure(o_), kExitUsage);
}

TEST_F(CliTest, SimulateIsReproducible) {
  o_.config = write("sim.json", kSimulate);
  ASSERT_EQ(cmd_simulate(o_), kExitOk) << err_.str();
  Json a = Json::parse(slurp(fs::path(o_.out) / "simulation_report.json"));
  ASSERT_EQ(cmd_simulate(o_), kExitOk);
  Json b = Json::parse(slurp(fs::path(o_.out) / "simulation_report.json"));
  a.erase("runtime_ms");
  b.erase("runtime_ms");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["config_echo"]["seed"], 42);

  o_.seed = 43;
  ASSERT_EQ(cmd_simulate(o_), kExitOk);
  Json c = Json::parse(slurp(fs::path(o_.out) / "simulation_report.json"));
  EXPECT_EQ(c["config_echo"]["seed"], 43);
}

TEST_F(CliTest, SimulateBudget) {
  o_.config = write("sim.json", kSimulate);
  o_.budget = 10;
  EXPECT_EQ(cmd_simulate(o_), kExitFailure);
}

TEST_F(CliTest, CheckPassesAndDetectsPerturbation) {
  EXPECT_EQ(cmd_check(o_), kExitOk);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
  o_.check_perturbation = 1e-3;
  std::ostringstream fresh;
  o_.out_stream = &fresh;
  EXPECT_EQ(cmd_check(o_), kExitFailure);
  EXPECT_NE(fresh.str().find("FAIL example2"), std::string::npos);
}

TEST_F(CliTest, ThreadBudgetFromEnvironment) {
  ::setenv("KEYREGION_THREADS", "1", 1);
  EXPECT_EQ(thread_budget(), 1u);
  ::setenv("KEYREGION_THREADS", "zero", 1);
  EXPECT_THROW(thread_budget(), std::exception);
  ::unsetenv("KEYREGION_THREADS");
  EXPECT_GE(thread_budget(), 1u);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string exe = KEYREGION_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("region"), 2);
  EXPECT_EQ(run("figure --figure nope --out " + (dir_ / "f").string()), 2);
  EXPECT_EQ(run("region --config " + std::string(KEYREGION_CONFIG_DIR) + "/example2_region.json --grid-step 0.25 --out " +
                (dir_ / "r").string()),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "r" / "region.csv"));
}
