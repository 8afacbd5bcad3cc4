// End-to-end runs of the vhsverify binary: exit codes, artifacts, determinism.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef VHSVERIFY_BIN
#error "VHSVERIFY_BIN must point at the vhsverify executable"
#endif

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "vhs_cli_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

CliRun run(const std::string& args, const fs::path& dir, const std::string& env = {}) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string("\"") + VHSVERIFY_BIN +
                          "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() +
                          "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

nlohmann::json report(const fs::path& dir) {
  return nlohmann::json::parse(slurp(dir / "report.json"));
}

TEST(Cli, VerifyHyperbolicFourSpace) {
  const fs::path dir = scratch("so14");
  const CliRun r = run("verify --family so --p 1 --q 2 --seed 7 --out " + (dir / "out").string(), dir);
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = report(dir / "out");
  EXPECT_EQ(doc.at("schema").get<int>(), 1);
  EXPECT_TRUE(doc.at("overall_pass").get<bool>());
  EXPECT_NEAR(doc.at("sections").at("coercivity").at("c0").get<double>(), 1.0, 1e-6);
  EXPECT_EQ(doc.at("seed").get<int>(), 7);
  EXPECT_TRUE(fs::exists(dir / "out" / "table1.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "profiles" / "direction_000.csv"));
  EXPECT_NE(r.out.find("overall: PASS"), std::string::npos);
}

TEST(Cli, QuaternionicRankOneTable) {
  const fs::path dir = scratch("sp11");
  const CliRun r = run("verify --family sp --m 1 --n 1 --quiet --out " + (dir / "out").string(), dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto doc = report(dir / "out");
  const auto& table = doc.at("sections").at("curvature").at("table");
  EXPECT_NEAR(table.at("fitted_min_k").get<double>(), -4.0, 1e-9);
  EXPECT_NEAR(table.at("fitted_ricci").get<double>(), -12.0, 0.12);
  EXPECT_NE(slurp(dir / "out" / "table1.csv").find("-12"), std::string::npos);
}

TEST(Cli, RejectsQBelowTwo) {
  const fs::path dir = scratch("so12");
  const CliRun r = run("verify --family so --p 1 --q 1 --out " + (dir / "out").string(), dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("q >= 2"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  const fs::path dir = scratch("usage");
  EXPECT_EQ(run("", dir).code, 2);
  EXPECT_EQ(run("frobnicate", dir).code, 2);
  EXPECT_EQ(run("verify --p notanumber", dir).code, 2);
  EXPECT_EQ(run("verify --family so --m 1", dir).code, 2);
  EXPECT_EQ(run("verify --family xx", dir).code, 2);
  EXPECT_EQ(run("verify --tol-scale -1", dir).code, 2);
  EXPECT_EQ(run("algebra --family so --p 2 --q 2 --xi 1,0,0", dir).code, 2);
  EXPECT_EQ(run("--help", dir).code, 0);
}

TEST(Cli, ConfigFileAndMalformedConfig) {
  const fs::path dir = scratch("config");
  {
    std::ofstream(dir / "good.json") << R"({"family":"so","p":2,"q":2,"xi":[1,2,3]})";
    std::ofstream(dir / "bad.json") << R"({"family":"so","p":2,)";
    std::ofstream(dir / "unknown.json") << R"({"family":"so","colour":2})";
  }
  const CliRun good = run("fibration --config " + (dir / "good.json").string() + " --quiet --out " +
                           (dir / "out").string(),
                       dir);
  EXPECT_EQ(good.code, 0) << good.err;
  EXPECT_EQ(report(dir / "out").at("algebra").at("name").get<std::string>(), "so(2,4)");
  EXPECT_EQ(run("verify --config " + (dir / "bad.json").string(), dir).code, 2);
  EXPECT_EQ(run("verify --config " + (dir / "unknown.json").string(), dir).code, 2);
  EXPECT_EQ(run("verify --config " + (dir / "missing.json").string(), dir).code, 2);
}

TEST(Cli, CheckFailureExitsOneAndStillWritesReport) {
  const fs::path dir = scratch("fail");
  const CliRun r = run("identities --family sp --m 1 --n 2 --tol-scale 1e-30 --quiet --out " +
                        (dir / "out").string(),
                    dir);
  EXPECT_EQ(r.code, 1);
  const auto doc = report(dir / "out");
  EXPECT_FALSE(doc.at("overall_pass").get<bool>());
}

TEST(Cli, ReportsAreByteIdentical) {
  const fs::path dir = scratch("determinism");
  const std::string args = "verify --family so --p 2 --q 2 --seed 3 --quiet --out ";
  ASSERT_EQ(run(args + (dir / "a").string(), dir).code, 0);
  ASSERT_EQ(run(args + (dir / "b").string(), dir).code, 0);
  EXPECT_EQ(slurp(dir / "a" / "report.json"), slurp(dir / "b" / "report.json"));
  EXPECT_EQ(slurp(dir / "a" / "table1.csv"), slurp(dir / "b" / "table1.csv"));
  EXPECT_EQ(slurp(dir / "a" / "profiles" / "direction_000.csv"),
            slurp(dir / "b" / "profiles" / "direction_000.csv"));
}

TEST(Cli, EnvironmentSetsDefaultOutput) {
  const fs::path dir = scratch("env");
  const CliRun r = run("algebra --family sp --m 1 --n 1 --quiet", dir,
                    "VHSVERIFY_OUT_DIR=\"" + (dir / "envout").string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "envout" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "envout" / "algebra.json"));
}

class CliSubcommand : public ::testing::TestWithParam<std::string> {};

TEST_P(CliSubcommand, RunsAlone) {
  const fs::path dir = scratch("sub_" + GetParam());
  const CliRun r = run(GetParam() + " --family so --p 2 --q 2 --seed 1 --quiet --out " +
                        (dir / "out").string(),
                    dir);
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = report(dir / "out");
  for (const auto& check : doc.at("checks")) {
    EXPECT_EQ(check.at("section").get<std::string>(), GetParam());
  }
}

INSTANTIATE_TEST_SUITE_P(AllStages, CliSubcommand,
                         ::testing::Values("algebra", "identities", "curvature", "fibration",
                                           "harmonic", "comparison", "coercivity"));

}  // namespace
