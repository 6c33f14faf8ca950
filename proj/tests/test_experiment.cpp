#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmfp/experiment.hpp"

using namespace gmfp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gmfp_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " GMFP_CLI_PATH " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

ExperimentOutcome run(ExperimentConfig cfg) {
  std::ostringstream out;
  return run_experiment(cfg, out);
}

}  // namespace

TEST(RunExperiment, CascadePowerPicard) {
  ExperimentConfig cfg;
  cfg.map = "cascade";
  cfg.scheme = Scheme::power_picard;
  cfg.x0 = "1";
  cfg.lambda = "1/2";
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_EQ(o.summary.at("verdict"), "converged");
  EXPECT_LE(o.summary.at("candidate_value").get<double>(), 1e-9);
  EXPECT_TRUE(o.summary.at("bounds_ok").get<bool>());
}

TEST(RunExperiment, HalvingPicard) {
  ExperimentConfig cfg;
  cfg.map = "scale:1/2";
  cfg.scheme = Scheme::picard;
  cfg.x0 = "1";
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_EQ(o.summary.at("iterations").get<int>(), 30);
}

TEST(RunExperiment, ReflectionSubset) {
  ExperimentConfig cfg;
  cfg.map = "rational-reflection";
  cfg.scheme = Scheme::subset;
  cfg.x0 = "sqrt2/2";
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_EQ(o.summary.at("candidate"), "1/2");
}

TEST(RunExperiment, CommonAutoLambda) {
  ExperimentConfig cfg;
  cfg.scheme = Scheme::common;
  cfg.maps = "scale:1/3,scale:1/4,scale:1/5";
  cfg.lambda = "auto";
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitOk);
}

TEST(RunExperiment, NoCommonFixedPointExitsOne) {
  ExperimentConfig cfg;
  cfg.scheme = Scheme::common;
  cfg.maps = "identity,scale:1/2,affine:1/2:1/2";
  cfg.lambda = "9/10";
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitVerdict);
  EXPECT_EQ(o.summary.at("verdict"), "condition-violation");
}

TEST(RunExperiment, NonConvergenceExitsOne) {
  ExperimentConfig cfg;
  cfg.map = "scale:1/2";
  cfg.scheme = Scheme::picard;
  cfg.max_iter = 3;
  const auto o = run(cfg);
  EXPECT_EQ(o.status, kExitVerdict);
  EXPECT_EQ(o.summary.at("verdict"), "max-iters");
}

TEST(RunExperiment, UnknownNamesAreUsageErrors) {
  ExperimentConfig cfg;
  cfg.map = "nope";
  EXPECT_THROW(run(cfg), UsageError);
  cfg = {};
  cfg.metric = "nope";
  EXPECT_THROW(run(cfg), UsageError);
  cfg = {};
  cfg.lambda = "3/2";
  EXPECT_THROW(run(cfg), UsageError);
  cfg = {};
  cfg.x0 = "one";
  EXPECT_THROW(run(cfg), UsageError);
}

TEST(RunExperiment, CsvLayoutAndSeed) {
  ExperimentConfig cfg;
  cfg.map = "scale:1/2";
  cfg.scheme = Scheme::picard;
  cfg.seed = 42;
  std::ostringstream out;
  run_experiment(cfg, out);
  std::istringstream lines(out.str());
  std::string first, header;
  std::getline(lines, first);
  std::getline(lines, header);
  EXPECT_NE(first.find("seed=42"), std::string::npos);
  EXPECT_EQ(header, "step,power,point,distance,bound,cum_iter");
}

TEST(RunExperiment, JsonFormat) {
  ExperimentConfig cfg;
  cfg.map = "scale:1/2";
  cfg.scheme = Scheme::picard;
  cfg.format = OutputFormat::json;
  cfg.seed = 9;
  std::ostringstream out;
  run_experiment(cfg, out);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("seed"), 9);
  EXPECT_TRUE(j.contains("trace"));
}

TEST(RunExperiment, FilesAndSummary) {
  const fs::path trace = scratch("files.csv");
  ExperimentConfig cfg;
  cfg.map = "cascade";
  cfg.output = trace.string();
  std::ostringstream out;
  run_experiment(cfg, out);
  EXPECT_TRUE(out.str().empty());
  ASSERT_TRUE(fs::exists(trace));
  const auto summary = nlohmann::json::parse(slurp(trace.string() + ".summary.json"));
  EXPECT_EQ(summary.at("verdict"), "converged");
}

TEST(Config, JsonKeysApply) {
  ExperimentConfig cfg;
  apply_config_json(cfg, nlohmann::json::parse(
                             R"({"map": "scale:1/3", "scheme": "picard", "x0": "3/4", "lambda": "1/3",
                                 "tol": 1e-6, "max_iter": 50, "seed": 17, "format": "json"})"));
  EXPECT_EQ(cfg.map, "scale:1/3");
  EXPECT_EQ(cfg.scheme, Scheme::picard);
  EXPECT_EQ(cfg.x0, "3/4");
  EXPECT_EQ(cfg.max_iter, 50u);
  EXPECT_EQ(cfg.seed, 17u);
  EXPECT_EQ(cfg.format, OutputFormat::json);
  EXPECT_THROW(apply_config_json(cfg, nlohmann::json::parse(R"({"format": "xml"})")), UsageError);
  EXPECT_THROW(apply_config_json(cfg, nlohmann::json::parse(R"({"max_iter": "many"})")), UsageError);
}

TEST(Config, SeedEnvironmentOverride) {
  std::uint64_t seed = 3;
  ::setenv("GMFP_SEED", "99", 1);
  apply_seed_env(seed);
  EXPECT_EQ(seed, 99u);
  ::setenv("GMFP_SEED", "x", 1);
  EXPECT_THROW(apply_seed_env(seed), UsageError);
  ::unsetenv("GMFP_SEED");
  apply_seed_env(seed);
  EXPECT_EQ(seed, 99u);
}

TEST(AxiomRunner, ExitStatuses) {
  std::ostringstream out;
  AxiomCheckConfig cfg;
  cfg.samples = 500;
  cfg.interpolation_points = 50;
  EXPECT_EQ(run_axiom_check(cfg, out).status, kExitOk);
  cfg.metric = "pairwise-only";
  const auto bad = run_axiom_check(cfg, out);
  EXPECT_EQ(bad.status, kExitVerdict);
  cfg.metric = "max-abs";
  cfg.sampler = "equal:uniform-float";
  cfg.samples = 1;
  EXPECT_EQ(run_axiom_check(cfg, out).status, kExitOk);
  cfg.metric = "nope";
  EXPECT_THROW(run_axiom_check(cfg, out), UsageError);
}

TEST(CertifyRunner, CascadeCertificate) {
  std::ostringstream out;
  CertifyConfig cfg;
  cfg.samples = 16;
  const auto o = run_certify(cfg, out);
  EXPECT_EQ(o.status, kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j.contains("certificate"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("solve --map cascade --x0 1 --lambda 1/2"), 0);
  EXPECT_EQ(run_cli("solve --map scale:1/2 --scheme picard --x0 1"), 0);
  EXPECT_EQ(run_cli("solve --map rational-reflection --scheme subset --x0 sqrt2/2"), 0);
  EXPECT_EQ(run_cli("common --maps identity,scale:1/2,affine:1/2:1/2 --lambda 9/10"), 1);
  EXPECT_EQ(run_cli("axioms --metric pairwise-only --samples 200"), 1);
  EXPECT_EQ(run_cli("axioms --samples 1 --sampler equal:uniform-float"), 0);
  EXPECT_EQ(run_cli("solve --map nope"), 2);
  EXPECT_EQ(run_cli("axioms --metric nope"), 2);
  EXPECT_EQ(run_cli("solve --bogus-flag"), 2);
  EXPECT_EQ(run_cli(""), 2);
}

TEST(Cli, CsvIsByteIdentical) {
  const fs::path a = scratch("det_a.csv"), b = scratch("det_b.csv");
  const std::string args = "solve --map cascade --x0 3/4 --seed 5 --output ";
  ASSERT_EQ(run_cli(args + a.string()), 0);
  ASSERT_EQ(run_cli(args + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const fs::path conf = scratch("conf.json"), out = scratch("conf_out.csv");
  std::ofstream(conf) << R"({"map": "scale:1/2", "scheme": "picard", "x0": "1", "seed": 4})";
  ASSERT_EQ(run_cli("solve --config " + conf.string() + " --output " + out.string()), 0);
  EXPECT_NE(slurp(out).find("map=scale:1/2"), std::string::npos);
  EXPECT_NE(slurp(out).find("seed=4"), std::string::npos);
  ASSERT_EQ(run_cli("solve --config " + conf.string() + " --seed 8 --output " + out.string()), 0);
  EXPECT_NE(slurp(out).find("seed=8"), std::string::npos);
  ASSERT_EQ(run_cli("solve --config " + conf.string() + " --output " + out.string(), "GMFP_SEED=123"), 0);
  EXPECT_NE(slurp(out).find("seed=123"), std::string::npos);
  EXPECT_EQ(run_cli("solve --config " + scratch("missing.json").string()), 2);
}
