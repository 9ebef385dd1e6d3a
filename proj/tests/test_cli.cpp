#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "fqmbl_cli_tests";

int run(const std::string& args) {
  fs::create_directories(kDir);
  const std::string cmd = std::string(FQMBL_CLI) + " " + args + " > " + (kDir / "stdout.txt").string() + " 2> " +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string path(const std::string& name) { return (kDir / name).string(); }

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("solve --algo pso --table1"), 1);
  EXPECT_EQ(run("solve"), 1);
  EXPECT_EQ(run("generate --n 5 --m 5 --out " + path("bad.json")), 1);
  EXPECT_EQ(run("generate --demand-range 9 3 --out " + path("bad.json")), 1);
}

TEST(Cli, RuntimeErrorsExitTwo) {
  EXPECT_EQ(run("solve --instance " + path("does_not_exist.json")), 2);
  std::ofstream(path("broken.json")) << "{ \"n\": 3,\n \"m_servers\": }";
  EXPECT_EQ(run("solve --instance " + path("broken.json")), 2);
  EXPECT_NE(slurp(kDir / "stderr.txt").find("line 2"), std::string::npos);
}

TEST(Cli, BruteOverBudgetFails) {
  ASSERT_EQ(run("generate --n 26 --m 9 --seed 1 --out " + path("big.json")), 0);
  EXPECT_EQ(run("solve --algo brute --instance " + path("big.json")), 2);
  EXPECT_NE(slurp(kDir / "stderr.txt").find("3124550"), std::string::npos);
}

TEST(Cli, ValidationFailureExitsThree) {
  EXPECT_EQ(run("validate --events 20000 --tolerance 1e-9 --no-network"), 3);
  EXPECT_EQ(run("validate --events 200000 --no-network"), 0);
  EXPECT_EQ(run("validate --events 500 --no-network"), 0);
  EXPECT_NE(slurp(kDir / "stderr.txt").find("not enforceable"), std::string::npos);
}

TEST(Cli, GenerateTable1MatchesFixture) {
  ASSERT_EQ(run("generate --table1 --out " + path("t1.json")), 0);
  EXPECT_EQ(slurp(kDir / "t1.json"), slurp(fs::path(FQMBL_DATA_DIR) / "table1.json"));
}

TEST(Cli, SolveWritesResultAndReplays) {
  ASSERT_EQ(run("generate --n 8 --m 2 --seed 3 --demand-range 2 20 --out " + path("g.json")), 0);
  ASSERT_EQ(run("solve --algo ga --seed 5 --instance " + path("g.json") + " --out " + path("r.json")), 0);
  const auto doc = nlohmann::json::parse(slurp(kDir / "r.json"));
  EXPECT_EQ(doc["algorithm"], "ga");
  EXPECT_EQ(doc["bound_runs"].size(), 6u);
  ASSERT_EQ(run("solve --algo ga --seed 5 --instance " + path("g.json") + " --context " + path("r.json") +
                " --out " + path("r2.json")),
            0);
  const auto replay = nlohmann::json::parse(slurp(kDir / "r2.json"));
  EXPECT_EQ(replay["bounds_id"], doc["bounds_id"]);
  EXPECT_EQ(replay["facilities"], doc["facilities"]);
  EXPECT_EQ(replay["bound_runs"].size(), 0u);
}

TEST(Cli, BenchWritesCsvAndPlotData) {
  ASSERT_EQ(run("generate --n 8 --m 2 --seed 4 --demand-range 2 20 --out " + path("b.json")), 0);
  ASSERT_EQ(run("bench --replications 2 --instance " + path("b.json") + " --out " + path("bench.csv")), 0);
  const std::string csv = slurp(kDir / "bench.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "algorithm,instance,n,m,seed,objective,runtime_ms,facilities,termination,bounds_id");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_TRUE(fs::exists(kDir / "bench_runtime_vs_n.dat"));
  EXPECT_TRUE(fs::exists(kDir / "bench_objective_vs_n.dat"));
}

TEST(Cli, TuneSmallGrid) {
  ASSERT_EQ(run("generate --n 8 --m 2 --seed 4 --demand-range 2 20 --out " + path("b.json")), 0);
  ASSERT_EQ(run("tune --instance " + path("b.json") +
                " --evaporation 0.95 --max-pheromone 150 --coefficient 1,3 --alpha 1 --beta 1 --out " +
                path("tune.csv")),
            0);
  const std::string csv = slurp(kDir / "tune.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
