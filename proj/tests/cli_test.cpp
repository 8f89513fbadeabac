#include "cdl/scenario.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CDL_CLI_PATH + " " + args + " 2>&1";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) o.out.append(buf, n);
  const int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string scenario(const std::string& name) { return std::string(CDL_SCENARIO_DIR) + "/" + name; }

std::string alpha_args() {
  return "--scenario " + scenario("mushrooms.cdl") + " --focus " + scenario("alpha.facts") +
         " --starter alice --query 'edible(m1)'";
}

TEST(Cli, RunBothEnginesOnAlpha) {
  const auto o = cli("run " + alpha_args() + " --engine both");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("\"tv\":\"true\""), std::string::npos) << o.out;
  EXPECT_NE(o.out.find(" match"), std::string::npos) << o.out;
}

TEST(Cli, RunBeta) {
  const auto o = cli("run --scenario " + scenario("mushrooms.cdl") + " --focus " + scenario("beta.facts") +
                     " --starter bob --query 'edible(m2)'");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("\"tv\":\"false\""), std::string::npos) << o.out;
}

TEST(Cli, InlineFactsEqualFocusFile) {
  std::string facts;
  for (const char* f : {"mushroom(m1)", "has_volva(m1)", "pale_brownish_cap(m1)", "patches(m1)",
                        "cup_margin_lined(m1)", "~has_annulus(m1)"})
    facts += std::string(" --fact '") + f + "'";
  const auto inline_run = cli("run --scenario " + scenario("mushrooms.cdl") + facts +
                              " --starter alice --query 'edible(m1)' --seed 4");
  const auto file_run = cli("run " + alpha_args() + " --seed 4");
  EXPECT_EQ(inline_run.code, 0);
  EXPECT_EQ(inline_run.out, file_run.out);
}

TEST(Cli, MalformedQueryExitsTwo) {
  const auto o = cli("run --scenario " + scenario("mushrooms.cdl") + " --starter bob --query 'edible('");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.out.find("parse error"), std::string::npos) << o.out;
}

TEST(Cli, UnknownAgentAndMissingFileExitTwo) {
  EXPECT_EQ(cli("run --scenario " + scenario("mushrooms.cdl") + " --starter zed --query 'edible(m1)'").code, 2);
  EXPECT_EQ(cli("run --scenario /nonexistent.cdl --starter a --query 'p'").code, 2);
  EXPECT_EQ(cli("run --scenario " + scenario("mushrooms.cdl")).code, 2);  // missing required flags
}

TEST(Cli, ValidateReportsDiagnostics) {
  const auto tmp = std::filesystem::temp_directory_path() / "cdl_cli_bad.cdl";
  {
    FILE* f = std::fopen(tmp.c_str(), "w");
    std::fputs("agent a {\n  defeasible r1: p(a) <= .\n  defeasible r1: q(a) <= .\n}\n", f);
    std::fclose(f);
  }
  const auto bad = cli("validate " + tmp.string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("DUP_RULE_ID"), std::string::npos) << bad.out;
  EXPECT_EQ(cli("validate " + scenario("mushrooms.cdl")).code, 0);
  std::filesystem::remove(tmp);
}

TEST(Cli, SeedEnvironmentOverridesFlag) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "cdl_cli_a.jsonl").string(), b = (dir / "cdl_cli_b.jsonl").string();
  cli("run " + alpha_args() + " --seed 1 --trace " + a, "CDL_SEED=9");
  cli("run " + alpha_args() + " --seed 9 --trace " + b);
  const std::string ta = cdl::read_file(a), tb = cdl::read_file(b);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
  EXPECT_EQ(ta.rfind("{\"seed\":9,", 0), 0u);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, OutputsAreWritten) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto dot = (dir / "cdl_cli.dot").string(), summary = (dir / "cdl_cli.json").string();
  const auto o = cli("run " + alpha_args() + " --engine both --dot " + dot + " --summary " + summary);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(cdl::read_file(dot), cdl::read_file(std::string(CDL_GOLDEN_DIR) + "/alpha.dot"));
  EXPECT_EQ(cdl::read_file(summary).rfind("{\"query\":\"edible(m1)\",\"tv\":\"true\"", 0), 0u);
  std::filesystem::remove(dot);
  std::filesystem::remove(summary);
}

TEST(Cli, OracleOnCycleIsUndefined) {
  const auto o = cli("oracle --scenario " + scenario("cycle.cdl") + " --starter one --query a");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("oracle: undefined"), std::string::npos) << o.out;
}

TEST(Cli, FuzzIsCleanAndRepeatable) {
  const auto a = cli("fuzz --agents 3 --rules 10 --count 50 --seed 3");
  const auto b = cli("fuzz --agents 3 --rules 10 --count 50 --seed 3 --parallel");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("mismatches 0"), std::string::npos) << a.out;
}

}  // namespace
