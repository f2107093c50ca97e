#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "report_io.hpp"

namespace cli = kforest::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "kforest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

cli::Json json_of(const Outcome& o) { return cli::Json::parse(o.out); }

struct SeedEnvGuard {
  SeedEnvGuard() { unsetenv(cli::kSeedEnv); }
  ~SeedEnvGuard() { unsetenv(cli::kSeedEnv); }
};

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  SeedEnvGuard g;
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"mu2", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"mu2", "--tol", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"mu2", "--tol", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-a", "--delta", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-a", "--fast", "--paper"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-a", "--dump-values"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"simulate", "--n", "3", "--k", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"rank", "--input", "/nonexistent/file"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"constants", "--format", "xml"}).code, cli::kExitUsage);
  const auto o = run({"zk", "--n", "-4"});
  EXPECT_EQ(o.code, cli::kExitUsage);
  EXPECT_NE(o.err.find("--n"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const auto o = run({"--help"});
  EXPECT_EQ(o.code, cli::kExitOk);
  EXPECT_NE(o.out.find("verify-a"), std::string::npos);
}

TEST(Cli, Mu2PrintsValueAndBudget) {
  const auto o = run({"mu2", "--tol", "1e-6"});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const auto j = json_of(o);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "mu2");
  EXPECT_NEAR(j["result"]["mu2"].get<double>(), 4.17042881, 1e-6);
  EXPECT_LE(j["result"]["error_budget"].get<double>(), 1e-6);
}

TEST(Cli, ConstantsReportsThresholds) {
  const auto j = json_of(run({"constants"}));
  EXPECT_NEAR(j["result"]["density_threshold_prime_c"].get<double>(), 3.59, 0.005);
  EXPECT_NEAR(j["result"]["density_threshold_prime_lambda"].get<double>(), 2.688, 0.001);
  EXPECT_NEAR(j["result"]["core_threshold_c"].get<double>(), 3.35, 0.01);
  EXPECT_NEAR(j["result"]["lambda4_over_f3"].get<double>(), 7.05, 0.01);
}

TEST(Cli, TriangleHasRankThree) {
  const auto path = std::filesystem::temp_directory_path() / "kforest_cli_triangle.edges";
  {
    std::ofstream f(path);
    f << "3 3\n0 1 0.1\n1 2 0.2\n0 2 0.3\n";
  }
  const auto o = run({"rank", "--input", path.string(), "--k", "2"});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const auto j = json_of(o);
  EXPECT_EQ(j["result"]["rank"], 3);
  EXPECT_EQ(j["result"]["forests"].size(), 2u);
  EXPECT_EQ(json_of(run({"rank", "--input", path.string(), "--k", "1"}))["result"]["rank"], 2);
  std::filesystem::remove(path);
}

TEST(Cli, SameSeedGivesByteIdenticalOutput) {
  SeedEnvGuard g;
  const std::vector<std::string> base{"simulate", "--n", "30", "--k", "2", "--trials", "4", "--seed", "11", "--no-timing"};
  auto with_threads = [&](const char* t) {
    auto a = base;
    a.insert(a.end(), {"--threads", t});
    return run(a);
  };
  const auto a = with_threads("1"), b = with_threads("1"), c = with_threads("3");
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const auto v1 = run({"verify-b", "--spacing", "0.02", "--samples", "40", "--no-timing", "--threads", "1"});
  const auto v2 = run({"verify-b", "--spacing", "0.02", "--samples", "40", "--no-timing", "--threads", "2"});
  EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, SeedPrecedence) {
  SeedEnvGuard g;
  auto seed_of = [](std::vector<std::string> extra) {
    std::vector<std::string> a{"simulate", "--n", "10", "--k", "1", "--trials", "2"};
    a.insert(a.end(), extra.begin(), extra.end());
    return json_of(run(a))["config"]["seed"].get<std::uint64_t>();
  };
  EXPECT_EQ(seed_of({}), cli::kDefaultSeed);
  setenv(cli::kSeedEnv, "42", 1);
  EXPECT_EQ(seed_of({}), 42u);
  EXPECT_EQ(seed_of({"--seed", "7"}), 7u);
  setenv(cli::kSeedEnv, "x1", 1);
  EXPECT_EQ(run({"simulate", "--n", "10", "--k", "1"}).code, cli::kExitUsage);
}

TEST(Cli, VerdictDrivesExitCode) {
  const auto ok = run({"verify-b", "--spacing", "0.001", "--samples", "50"});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;
  EXPECT_TRUE(json_of(ok)["pass"].get<bool>());
  // too coarse a grid for the Lipschitz budget: verdict fails, exit 1
  const auto fail = run({"verify-b", "--spacing", "0.05", "--samples", "10"});
  EXPECT_EQ(fail.code, cli::kExitFail);
  EXPECT_FALSE(json_of(fail)["pass"].get<bool>());
  const auto c = run({"verify-c", "--samples", "1000"});
  EXPECT_EQ(c.code == cli::kExitOk, json_of(c)["pass"].get<bool>());
}

TEST(Cli, CsvAndOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "kforest_cli_out.csv";
  const auto o = run({"core", "--n", "500", "--c", "4", "--trials", "3", "--format", "csv", "-o", path.string()});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("experiment,", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 3);
  std::filesystem::remove(path);
}

TEST(Cli, ReportJsonMatchesModuleVerdict) {
  const auto o = run({"verify-a", "--delta", "0.01", "--no-timing"});
  const auto j = json_of(o);
  bool all = true;
  for (const auto& r : j["reports"]) all = all && r["pass"].get<bool>();
  EXPECT_EQ(all, j["pass"].get<bool>());
  EXPECT_EQ(o.code, all ? cli::kExitOk : cli::kExitFail);
  EXPECT_FALSE(j["reports"][0].contains("seconds"));
}
