#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "projext/serialization.hpp"

using namespace projext;
using namespace projext::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "projext_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_args(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "projext");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string generate(std::uint64_t seed) {
  const auto path = scratch("inst_" + std::to_string(seed) + ".json");
  std::ostringstream out, err;
  RunConfig c;
  c.command = Command::gen;
  c.seed = seed;
  c.output_path = path.string();
  EXPECT_EQ(run(c, out, err), kExitOk) << err.str();
  return path.string();
}

}  // namespace

TEST(Cli, GenProducesAnInstance) {
  const std::string path = generate(42);
  const Json doc = parse_document(slurp(path));
  const InstanceBundle b = instance_from_json(doc);
  EXPECT_LE(b.problem.source().total_dim(), 16);
}

TEST(Cli, ExtendRecoversGroundTruth) {
  const std::string inst = generate(43);
  const auto report = scratch("extend_43.json");
  std::string summary;
  ASSERT_EQ(run_args({"extend", "--in", inst, "--out", report.string(), "--samples", "60"},
                     &summary),
            kExitOk);
  EXPECT_NE(summary.find("extend:"), std::string::npos);
  const Json doc = parse_document(slurp(report));
  EXPECT_EQ(doc.at("command"), "extend");
  EXPECT_TRUE(doc.at("overall").get<bool>());
  EXPECT_FALSE(doc.at("config").contains("output_path"));
  EXPECT_NE(slurp(report).find("ground_truth_recovery"), std::string::npos);
}

TEST(Cli, VerifyAndCertifyOnExtendedReport) {
  const std::string inst = generate(44);
  const auto report = scratch("extend_44.json");
  ASSERT_EQ(run_args({"extend", "--in", inst, "--out", report.string(), "--samples", "40"}),
            kExitOk);
  std::string text;
  EXPECT_EQ(run_args({"verify", "--in", report.string(), "--samples", "60"}, &text), kExitOk);
  EXPECT_EQ(parse_document(text).at("command"), "verify");
  EXPECT_EQ(run_args({"certify", "--in", report.string(), "--samples", "60"}, &text), kExitOk);
  EXPECT_NE(text.find("verdict"), std::string::npos);
}

TEST(Cli, CounterexampleProfiles) {
  std::string text;
  EXPECT_EQ(run_args({"counterexample", "--profile", "sin", "--samples", "200"}, &text), kExitOk);
  const Json doc = parse_document(text);
  EXPECT_TRUE(doc.at("overall").get<bool>());
  EXPECT_EQ(run_args({"counterexample", "--profile", "zero", "--samples", "50"}), kExitOk);
  EXPECT_EQ(run_args({"counterexample", "--profile", "bogus"}), kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_args({}), kExitUsage);
  EXPECT_EQ(run_args({"extend"}), kExitUsage);
  EXPECT_EQ(run_args({"extend", "--in", scratch("missing.json").string()}), kExitUsage);
  EXPECT_EQ(run_args({"gen", "--samples", "-3"}), kExitUsage);
  EXPECT_EQ(run_args({"gen", "--tolerance-scale", "0"}), kExitUsage);
  {
    std::ofstream f(scratch("garbage.json"));
    f << "[1, 2";
  }
  EXPECT_EQ(run_args({"verify", "--in", scratch("garbage.json").string()}), kExitUsage);
  EXPECT_EQ(run_args({"--help"}), kExitOk);
}

TEST(Cli, HypothesisFailureExitsWithOne) {
  const auto path = scratch("trace.json");
  const AlgebraDescriptor cc({{1, 1.0}, {1, 1.0}});
  const AlgebraDescriptor c({{1, 1.0}});
  const LinearMapMatrix u(cc, c, Matrix::Ones(1, 2));
  {
    std::ofstream f(path);
    f << dump_canonical(to_json(ExtensionProblem(u)));
  }
  std::string text;
  EXPECT_EQ(run_args({"extend", "--in", path.string(), "--samples", "20"}, &text),
            kExitHypothesis);
  EXPECT_NE(text.find("orthogonal_additivity"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::string inst = generate(45);
  std::string a, b;
  ASSERT_EQ(run_args({"extend", "--in", inst, "--seed", "9", "--samples", "30"}, &a), kExitOk);
  ASSERT_EQ(run_args({"extend", "--in", inst, "--seed", "9", "--samples", "30"}, &b), kExitOk);
  EXPECT_EQ(a, b);
}
