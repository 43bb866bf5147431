// Drives the built `arena` binary through the shell.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" ARENA_CLI_PATH "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("arena_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateRowCountAndDeterminism) {
  const auto a = dir_ / "a.csv";
  const auto b = dir_ / "b.csv";
  const std::string flags = "simulate --m 2 --n 2 --players 1024 --runs 20 --rho 0.5 --seed 7";
  ASSERT_EQ(run(flags + " --out " + a.string()).code, 0);
  ASSERT_EQ(run(flags + " --threads 3 --out " + b.string()).code, 0);
  const auto text = slurp(a);
  EXPECT_EQ(count_lines(text), 1u + 1024u * 20u);
  EXPECT_EQ(text, slurp(b));
}

TEST_F(Cli, ParityViolationExitsWithValidationCode) {
  EXPECT_EQ(run("simulate --players 1020 --out " + (dir_ / "x.csv").string()).code, 3);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("simulate --runs abc").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, MissingInputIsIoError) {
  EXPECT_EQ(run("worldcup --train /nonexistent.csv --out-dir " + dir_.string()).code, 4);
}

TEST_F(Cli, StdoutByDefaultAndEnvDirectory) {
  const auto r = run("moments --m 2 --n 2 --rho 0.5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 14), "i,j,mu,sigma2\n");
  ASSERT_EQ(run("moments --rho 0.5", "ARENA_OUTPUT_DIR='" + dir_.string() + "'").code, 0);
  EXPECT_EQ(slurp(dir_ / "moments.csv"), r.out);
}

TEST_F(Cli, SweepSinglePoint) {
  const auto r = run("sweep --rho 0.1 --x-from 0 --x-to 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_EQ(r.out.substr(0, 21), "x_true,x_hat,rho_hat\n");
}

TEST_F(Cli, WorldcupReports) {
  ASSERT_EQ(run("worldcup --pooled --out-dir " + dir_.string()).code, 0);
  const auto comparison = slurp(dir_ / "comparison.csv");
  EXPECT_EQ(count_lines(comparison), 1u + 24u);
  EXPECT_EQ(comparison.substr(0, 20), "country,code,F,P1,P2");
  EXPECT_EQ(count_lines(slurp(dir_ / "distances.csv")), 5u);
  EXPECT_EQ(count_lines(slurp(dir_ / "pooled.csv")), 1u + 24u);
  EXPECT_TRUE(fs::exists(dir_ / "estimates.csv"));
}

TEST_F(Cli, EstimateFromSimulatedOutcomes) {
  const auto outcomes = dir_ / "o.csv";
  ASSERT_EQ(run("simulate --players 1024 --runs 80 --tagged-x 1 --seed 5 --out " +
                outcomes.string())
                .code,
            0);
  const auto preds = dir_ / "p.csv";
  const auto r =
      run("estimate --results " + outcomes.string() + " --player 0 --predictions " + preds.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("entity,x_hat,rho_hat,log_objective,at_x_bound,at_rho_bound\nplayer-0,", 0),
            0u);
  // Three methods of four probabilities each; each method sums to one.
  std::istringstream in(slurp(preds));
  std::string line;
  std::getline(in, line);
  std::map<std::string, double> sums;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto p0 = line.find(',', line.find(',', line.find(',') + 1) + 1);
    const auto p1 = line.find(',', p0 + 1);
    sums[line.substr(p1 + 1)] += std::stod(line.substr(p0 + 1, p1 - p0 - 1));
    ++rows;
  }
  EXPECT_EQ(rows, 12);
  for (const auto& [method, s] : sums) EXPECT_NEAR(s, 1.0, 1e-6) << method;
}

TEST_F(Cli, PredictExactAndApprox) {
  const auto exact = run("predict --m 1 --n 1 --x 0 --rho 0");
  ASSERT_EQ(exact.code, 0);
  EXPECT_NE(exact.out.find(",exact"), std::string::npos);
  const auto approx = run("predict --m 1 --n 1 --x 0 --rho 1");
  EXPECT_EQ(approx.out, "entity,wins,losses,probability,method\nplayer,1,0,0.5,map\nplayer,0,1,0.5,map\n");
}
