#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "charp/cli.hpp"
#include "json.hpp"

namespace charp {
namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_script(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("charp_test_" + name + ".charp");
  std::ofstream(path) << text;
  return path.string();
}

std::string bundled(const std::string& name) { return std::string(CHARP_SOURCE_DIR) + "/scripts/" + name; }

TEST(Cli, ReproTVerifies) {
  const CliRun r = cli({"--json", "repro", "--claim", "T", "--p", "2,3,5"});
  EXPECT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["claims"][0]["overall"], "verified");
  EXPECT_EQ(j["claims"][0]["characteristics"].size(), 3u);
}

TEST(Cli, CompositeCharacteristicIsAUsageError) {
  const CliRun r = cli({"repro", "--claim", "T", "--p", "4"});
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find("4 is not prime"), std::string::npos) << r.err;
}

TEST(Cli, UnknownClaimAndBadFlags) {
  EXPECT_EQ(cli({"repro", "--claim", "nope"}).status, 3);
  EXPECT_EQ(cli({"--threads", "0", "repro", "--claim", "T"}).status, 3);
  EXPECT_EQ(cli({"--budget", "x", "repro", "--claim", "T"}).status, 3);
  EXPECT_EQ(cli({}).status, 3);
  EXPECT_EQ(cli({"--help"}).status, 0);
}

TEST(Cli, KnownFPurityMarksTheExpectedFailure) {
  const CliRun r = cli({"--json", "repro", "--claim", "known-fpurity", "--p", "2"});
  EXPECT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["claims"][0]["overall"], "verified");
  bool seen = false;
  for (const auto& s : j["claims"][0]["steps"]) {
    for (const auto& n : s["notes"]) seen = seen || n == "computed: fails F-purity";
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, FailingCheckExitsOne) {
  const std::string path = temp_script("fail", "ring p=2 vars x y\npoly f = x + y\ncheck dim0 [f]\n");
  EXPECT_EQ(cli({"check", "--script", path}).status, 1);
}

TEST(Cli, TinyBudgetIsInconclusive) {
  const CliRun r = cli({"--budget", "1:100", "repro", "--claim", "A3", "--p", "2"});
  EXPECT_EQ(r.status, 2) << r.out << r.err;
}

TEST(Cli, ParseErrorsExitThree) {
  const std::string path = temp_script("bad", "ring p=3 vars x\npoly = x\n");
  const CliRun r = cli({"check", "--script", path});
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find("2:6"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"check", "--script", "/nonexistent/file.charp"}).status, 3);
}

TEST(Cli, BundledScriptsVerify) {
  for (const char* name : {"t_ring.charp", "a3_q9.charp", "fpurity.charp"}) {
    const CliRun r = cli({"check", "--script", bundled(name)});
    EXPECT_EQ(r.status, 0) << name << "\n" << r.out << r.err;
  }
}

TEST(Cli, OutputDoesNotDependOnThreads) {
  const CliRun one = cli({"--json", "--threads", "1", "repro", "--claim", "T,splits5,Bn", "--p", "2,3"});
  const CliRun four = cli({"--json", "--threads", "4", "repro", "--claim", "T,splits5,Bn", "--p", "2,3"});
  EXPECT_EQ(one.status, 0);
  EXPECT_EQ(one.out, four.out);
  const std::string path = bundled("fpurity.charp");
  EXPECT_EQ(cli({"--json", "--threads", "1", "check", "--script", path}).out,
            cli({"--json", "--threads", "3", "check", "--script", path}).out);
}

TEST(Cli, PerfOnlyOnRequest) {
  EXPECT_EQ(cli({"--json", "repro", "--claim", "Bn"}).out.find("\"perf\""), std::string::npos);
  EXPECT_NE(cli({"--json", "--perf", "repro", "--claim", "Bn"}).out.find("\"perf\""), std::string::npos);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = (std::filesystem::temp_directory_path() / "charp_test_cert.json").string();
  const CliRun r = cli({"--json", "repro", "--claim", "splits5", "--out", path});
  ASSERT_EQ(r.status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
}

TEST(Cli, Utilities) {
  const std::string path = temp_script("util", "ring p=5 vars x y\npoly f = x^2 - y\nideal I = [f, x*y]\n");
  const CliRun gb = cli({"gb", "--script", path, "--ideal", "I"});
  EXPECT_EQ(gb.status, 0) << gb.err;
  EXPECT_NE(gb.out.find("y^2"), std::string::npos) << gb.out;
  const CliRun dim = cli({"dim", "--script", path, "--ideal", "I"});
  EXPECT_EQ(dim.status, 0);
  EXPECT_NE(dim.out.find("0"), std::string::npos);
  const CliRun jac = cli({"jac", "--script", path, "--polys", "f", "--vars", "x,y"});
  EXPECT_EQ(jac.status, 0);
  EXPECT_NE(jac.out.find("2*x"), std::string::npos) << jac.out;
  EXPECT_EQ(cli({"gb", "--script", path, "--ideal", "J"}).status, 3);
}

TEST(Cli, BudgetParsing) {
  const auto a = parse_budget("100");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->max_pair_reductions, 100u);
  EXPECT_EQ(a->max_terms, 2000u);
  const auto b = parse_budget("5:7");
  ASSERT_TRUE(b);
  EXPECT_EQ(b->max_pair_reductions, 5u);
  EXPECT_EQ(b->max_terms, 7u);
  EXPECT_FALSE(parse_budget("abc"));
  EXPECT_FALSE(parse_budget("0"));
}

}  // namespace
}  // namespace charp
