// End-to-end tests of the command-line tool. The binary path arrives as
// argv[1] (wired up by CTest).

#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

std::string g_cli_path;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::vector<std::string>& args,
                  bool merge_stderr = true) {
  std::string cmd = g_cli_path;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse_report(const std::string& text) {
  return nlohmann::json::parse(text);
}

}  // namespace

TEST(Cli, FisherQuadratureEmitsMetricWithConfig) {
  const auto r = run_cli({"fisher", "--family", "gaussian:3:1.0", "--backend",
                          "quadrature"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_EQ(j.at("config").at("command"), "fisher");
  EXPECT_EQ(j.at("config").at("backend"), "quadrature");
  EXPECT_EQ(j.at("config").at("nodes"), 64);
  EXPECT_EQ(j.at("result").at("backend"), "quadrature");
  const auto entries = j.at("result").at("entries");
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      EXPECT_NEAR(entries.at(row).at(col).get<double>(),
                  row == col ? 1.0 : 0.0, 1e-8);
    }
  }
  EXPECT_EQ(r.output.back(), '\n');
}

TEST(Cli, MonteCarloOnComplexFamilyIsAUsageError) {
  const auto r = run_cli({"fisher", "--family", "complex-gaussian:1.0",
                          "--backend", "montecarlo"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("montecarlo"), std::string::npos);
}

TEST(Cli, UnknownFlagIsAUsageError) {
  const auto r = run_cli({"fisher", "--family", "gaussian:1:1.0", "--bogus"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("--bogus"), std::string::npos);
}

TEST(Cli, MalformedFamilyIsAUsageError) {
  const auto r = run_cli({"entropy", "--family", "discrete:[0.5,0.6]"});
  EXPECT_EQ(r.exit_code, 2);
  const auto r2 = run_cli({"fisher", "--family", "gaussian:3"});
  EXPECT_EQ(r2.exit_code, 2);
}

TEST(Cli, EntropyOfUniformBinaryIsOneBit) {
  const auto r = run_cli({"entropy", "--family", "discrete:[0.5,0.5]"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_DOUBLE_EQ(j.at("result").at("bits").get<double>(), 1.0);
}

TEST(Cli, KlReportsSupportViolationAsInfinite) {
  const auto r = run_cli({"kl", "--family", "discrete:[0.5,0.5]", "--family2",
                          "discrete:[1.0,0.0]"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_TRUE(j.at("result").at("is_infinite").get<bool>());

  const auto finite = run_cli({"kl", "--family", "discrete:[0.25,0.75]",
                               "--family2", "discrete:[0.5,0.5]"});
  const auto jf = parse_report(finite.output);
  EXPECT_NEAR(jf.at("result").at("value").get<double>(), 0.13081203594113697,
              1e-12);
}

TEST(Cli, KullbackBetweenUnitGaussians) {
  const auto r = run_cli({"kullback", "--family", "gaussian:1:1.0", "--family2",
                          "gaussian:1:1.0", "--theta", "1", "--theta2", "0"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_NEAR(j.at("result").at("value").get<double>(), 0.5, 1e-8);
}

TEST(Cli, KullbackOnComplexFamilyIsAUsageError) {
  const auto r = run_cli({"kullback", "--family", "complex-gaussian:1.0",
                          "--family2", "gaussian:4:1.0"});
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, SignatureOfComplexGaussianIsLorentzian) {
  const auto r = run_cli({"signature", "--family", "complex-gaussian:1.0",
                          "--backend", "analytic"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_EQ(j.at("result").at("n_negative"), 1);
  EXPECT_EQ(j.at("result").at("n_zero"), 0);
  EXPECT_EQ(j.at("result").at("n_positive"), 3);
}

TEST(Cli, IntervalReportsBothForms) {
  const auto r = run_cli({"interval", "--family", "complex-gaussian:1.0",
                          "--backend", "analytic", "--rescale", "a2", "--theta",
                          "1,0,0,0", "--theta2", "1,0,0,0"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = parse_report(r.output);
  EXPECT_DOUBLE_EQ(j.at("result").at("two_point").at("s_squared").get<double>(),
                   -1.0);
  EXPECT_EQ(j.at("result").at("two_point").at("classification"), "timelike");
  EXPECT_DOUBLE_EQ(
      j.at("result").at("displacement").at("s_squared").get<double>(), 0.0);
  EXPECT_EQ(j.at("result").at("displacement").at("classification"), "null");
}

TEST(Cli, ExpansionStreamsCsvRows) {
  const auto r = run_cli({"expansion", "--family", "gaussian:1:1.0", "--backend",
                          "analytic", "--output", "csv"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.output.rfind("epsilon,lhs,prediction,residual\n", 0), 0u);
  int lines = 0;
  for (char c : r.output) lines += c == '\n' ? 1 : 0;
  EXPECT_EQ(lines, 4);  // header + three epsilons
}

TEST(Cli, JsonOutputIsByteDeterministic) {
  const std::vector<std::string> quad = {"fisher",    "--family",
                                         "gaussian:2:1.5", "--backend",
                                         "quadrature", "--nodes", "16"};
  const auto a = run_cli(quad, false);
  const auto b = run_cli(quad, false);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);

  const std::vector<std::string> mc = {"fisher", "--family", "gaussian:2:1.0",
                                       "--backend", "montecarlo", "--samples",
                                       "20000", "--seed", "7"};
  const auto c = run_cli(mc, false);
  const auto d = run_cli(mc, false);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_EQ(c.output, d.output);
}

TEST(Cli, VerifyPaperFailsUnderCoarseQuadrature) {
  const auto r = run_cli({"verify-paper", "--nodes", "4"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("[FAIL]"), std::string::npos);
  EXPECT_NE(r.output.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyPaperPassesAtModerateResolutionForOneScale) {
  const auto r = run_cli({"verify-paper", "--a", "1.0", "--nodes", "24"});
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("verify-paper: PASS"), std::string::npos);
  EXPECT_NE(r.output.find("Lorentzian constraints"), std::string::npos);
}

TEST(Cli, VerifyPaperWideScaleWithRescaleToken) {
  const auto r = run_cli(
      {"verify-paper", "--a", "2.0", "--rescale", "a2", "--nodes", "24"});
  EXPECT_EQ(r.exit_code, 0) << r.output;
}

TEST(Cli, VerifyPaperJsonIsByteDeterministic) {
  const std::vector<std::string> args = {"verify-paper", "--a",    "1.0",
                                         "--nodes",      "24",     "--seed",
                                         "77",           "--output", "json"};
  const auto a = run_cli(args, false);
  const auto b = run_cli(args, false);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  g_cli_path = argc > 1 ? argv[1] : "./tools/infogeo";
  return RUN_ALL_TESTS();
}
