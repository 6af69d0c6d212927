#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int RunMcda(const std::string& args) {
  const std::string cmd = std::string(MCDA_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t CountLines(const fs::path& p) {
  std::istringstream in(Slurp(p));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mcda_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const std::string& rel) const { return (dir_ / rel).string(); }
  fs::path dir_;
};

TEST_F(CliTest, SimulateTrainRankExplainEval) {
  ASSERT_EQ(RunMcda("simulate --family polynomial-3 --N 60 --seed 3 --out " + P("sim")), 0);
  EXPECT_EQ(CountLines(P("sim/data.csv")), 61u);
  EXPECT_TRUE(fs::exists(P("sim/truth.json")));
  EXPECT_TRUE(fs::exists(P("sim/manifest.json")));

  const std::string data = " --dataset " + P("sim/data.csv") + " --schema " + P("sim/schema.json");
  ASSERT_EQ(RunMcda("train" + data + " --iters 5 --seed 1 --quiet --out " + P("tr")), 0);
  const auto report = nlohmann::json::parse(Slurp(P("tr/report.json")));
  EXPECT_TRUE(report.contains("test_auc"));
  EXPECT_TRUE(report.contains("final_alpha"));
  EXPECT_EQ(report["loss_trace"].size(), 5u);
  EXPECT_FALSE(report.contains("train_seconds"));

  ASSERT_EQ(RunMcda("rank --model " + P("tr/model.json") + data + " --out " + P("rk")), 0);
  EXPECT_EQ(CountLines(P("rk/ranking.csv")), 61u);
  EXPECT_EQ(Slurp(P("rk/ranking.csv")).substr(0, 37), "rank,alternative,score,normalized_sco");

  ASSERT_EQ(RunMcda("explain --model " + P("tr/model.json") + " --grid 25 --out " + P("ex")), 0);
  EXPECT_EQ(CountLines(P("ex/curve_x1.csv")), 26u);
  EXPECT_EQ(CountLines(P("ex/importance.csv")), 4u);
  const auto diag = nlohmann::json::parse(Slurp(P("ex/diagnostics.json")));
  EXPECT_EQ(diag["attributes"].size(), 3u);

  ASSERT_EQ(RunMcda("eval --model " + P("tr/model.json") + data + " --out " + P("ev")), 0);
  EXPECT_TRUE(fs::exists(P("ev/eval.json")));
}

TEST_F(CliTest, TrainTwiceIsByteIdentical) {
  ASSERT_EQ(RunMcda("simulate --N 40 --seed 8 --out " + P("sim")), 0);
  const std::string base = "train --dataset " + P("sim/data.csv") + " --schema " +
                           P("sim/schema.json") + " --iters 4 --seed 5 --quiet --out ";
  ASSERT_EQ(RunMcda(base + P("a")), 0);
  ASSERT_EQ(RunMcda(base + P("b")), 0);
  EXPECT_EQ(Slurp(P("a/model.json")), Slurp(P("b/model.json")));
  EXPECT_EQ(Slurp(P("a/report.json")), Slurp(P("b/report.json")));
  EXPECT_EQ(Slurp(P("a/manifest.json")), Slurp(P("b/manifest.json")));
}

TEST_F(CliTest, FatalErrorsExitNonZero) {
  EXPECT_NE(RunMcda("simulate --family polynomial-15 --n 16 --out " + P("bad")), 0);
  EXPECT_NE(RunMcda("train --dataset " + P("missing.csv") + " --schema " + P("missing.json") +
                " --out " + P("t")),
            0);
  EXPECT_NE(RunMcda("frobnicate"), 0);
  ASSERT_EQ(RunMcda("simulate --N 20 --out " + P("sim")), 0);
  EXPECT_NE(RunMcda("train --dataset " + P("sim/data.csv") + " --schema " + P("sim/schema.json") +
                " --alpha fixed=1.5 --out " + P("t")),
            0);
  EXPECT_NE(RunMcda("train --dataset " + P("sim/data.csv") + " --schema " + P("sim/schema.json") +
                " --lr -1 --out " + P("t")),
            0);
  EXPECT_NE(RunMcda("rank --model " + P("nope.json") + " --dataset " + P("sim/data.csv") +
                " --schema " + P("sim/schema.json") + " --out " + P("r")),
            0);
}

TEST_F(CliTest, ExperimentTwoHasTwentyAlphaRowsPerFamily) {
  ASSERT_EQ(RunMcda("experiment 2 --reps 1 --iters 1 --quiet --out " + P("e2")), 0);
  const auto report = nlohmann::json::parse(Slurp(P("e2/report.json")));
  EXPECT_EQ(report["rows"].size(), 60u);
  EXPECT_EQ(CountLines(P("e2/report.csv")), 61u);
  EXPECT_TRUE(fs::exists(P("e2/timing.json")));
}

TEST_F(CliTest, ExperimentThreeWritesCurveFiles) {
  ASSERT_EQ(RunMcda("experiment 3 --kinds 1 --reps 1 --iters 2 --quiet --out " + P("e3")), 0);
  for (const char* model : {"hybrid", "baseline"}) {
    for (int a = 1; a <= 3; ++a) {
      EXPECT_TRUE(fs::exists(P("e3/curves_model1_" + std::string(model) + "_x" +
                               std::to_string(a) + ".csv")));
    }
  }
}

}  // namespace
