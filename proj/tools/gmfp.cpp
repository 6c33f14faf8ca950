// gmfp: G-metric fixed-point experiments from the command line.
//
//   gmfp axioms  --metric max-abs --samples 10000 --seed 1
//   gmfp certify --map cascade --lambda 1/2 --samples 128
//   gmfp solve   --map cascade --scheme power-picard --x0 1 --lambda 1/2
//   gmfp common  --maps scale:1/3,scale:1/4,scale:1/5 --lambda auto
//   gmfp family  --family halving-shift --count 64

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmfp/experiment.hpp"

namespace {

struct Flags {
  std::string config;
  std::string scheme;
  std::string format;
};

void add_experiment_flags(CLI::App* cmd, gmfp::ExperimentConfig& cfg, Flags& flags) {
  cmd->add_option("--config", flags.config, "JSON experiment config; flags override its keys");
  cmd->add_option("--map", cfg.map, "Map registry name");
  cmd->add_option("--metric", cfg.metric, "G-metric name");
  cmd->add_option("--x0", cfg.x0, "Starting point: p/q, a+b*sqrt2 or a float literal");
  cmd->add_option("--lambda", cfg.lambda, "Contraction constant in (0,1)");
  cmd->add_option("--tol", cfg.tol, "Residual tolerance");
  cmd->add_option("--max-iter", cfg.max_iter, "Iteration cap");
  cmd->add_option("--n-cap", cfg.n_cap, "Largest power tried by find_power");
  cmd->add_option("--samples", cfg.samples, "Witness / condition sample count");
  cmd->add_option("--seed", cfg.seed, "Sampling seed (GMFP_SEED overrides)");
  cmd->add_option("--format", flags.format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", cfg.output, "Trace path; the summary goes to <output>.summary.json");
}

// Flags given on the command line win over the config file.
gmfp::ExperimentConfig merge(const CLI::App* cmd, const gmfp::ExperimentConfig& from_flags,
                             const Flags& flags, gmfp::Scheme default_scheme) {
  gmfp::ExperimentConfig cfg;
  cfg.scheme = default_scheme;
  if (!flags.config.empty()) cfg = gmfp::load_config_file(flags.config, cfg);
  auto given = [cmd](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--map")) cfg.map = from_flags.map;
  if (given("--maps")) cfg.maps = from_flags.maps;
  if (given("--family")) cfg.family = from_flags.family;
  if (given("--metric")) cfg.metric = from_flags.metric;
  if (given("--x0")) cfg.x0 = from_flags.x0;
  if (given("--lambda")) cfg.lambda = from_flags.lambda;
  if (given("--subset")) cfg.subset = from_flags.subset;
  if (given("--tol")) cfg.tol = from_flags.tol;
  if (given("--max-iter")) cfg.max_iter = from_flags.max_iter;
  if (given("--n-cap")) cfg.n_cap = from_flags.n_cap;
  if (given("--samples")) cfg.samples = from_flags.samples;
  if (given("--count")) cfg.count = from_flags.count;
  if (given("--seed")) cfg.seed = from_flags.seed;
  if (given("--output")) cfg.output = from_flags.output;
  if (given("--scheme")) cfg.scheme = gmfp::parse_scheme(flags.scheme);
  if (given("--format")) cfg.format = flags.format == "json" ? gmfp::OutputFormat::json : gmfp::OutputFormat::csv;
  gmfp::apply_seed_env(cfg.seed);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G-metric fixed-point machinery: axiom checks, power certificates, iteration schemes"};
  app.require_subcommand(1);

  gmfp::AxiomCheckConfig axioms_cfg;
  auto* axioms = app.add_subcommand("axioms", "Check (G1)-(G5) on sampled triples");
  axioms->add_option("--metric", axioms_cfg.metric, "G-metric name");
  axioms->add_option("--sampler", axioms_cfg.sampler,
                     "uniform-float | uniform-rational | exact-mixed, optionally prefixed with equal:");
  axioms->add_option("--samples", axioms_cfg.samples, "Number of sampled triples");
  axioms->add_option("--interpolation", axioms_cfg.interpolation_points, "Pool size for the G5 point a");
  axioms->add_option("--seed", axioms_cfg.seed, "Sampling seed (GMFP_SEED overrides)");
  axioms->add_option("--output", axioms_cfg.output, "Report path");

  gmfp::CertifyConfig certify_cfg;
  auto* certify = app.add_subcommand("certify", "Sampled power-contraction certificate as JSON");
  certify->add_option("--map", certify_cfg.map, "Map registry name");
  certify->add_option("--metric", certify_cfg.metric, "G-metric name");
  certify->add_option("--lambda", certify_cfg.lambda, "Contraction constant in (0,1)");
  certify->add_option("--n-cap", certify_cfg.n_cap, "Largest power tried");
  certify->add_option("--samples", certify_cfg.samples, "Sampled points and witness pairs");
  certify->add_option("--seed", certify_cfg.seed, "Sampling seed (GMFP_SEED overrides)");
  certify->add_option("--output", certify_cfg.output, "Certificate path");

  gmfp::ExperimentConfig solve_cfg;
  Flags solve_flags;
  auto* solve = app.add_subcommand("solve", "Picard, power-Picard or subset iteration for one map");
  add_experiment_flags(solve, solve_cfg, solve_flags);
  solve->add_option("--scheme", solve_flags.scheme, "Iteration scheme")
      ->check(CLI::IsMember({"picard", "power-picard", "subset"}));
  solve->add_option("--subset", solve_cfg.subset,
                    "B for the subset scheme: auto | interval:<lo>:<hi> | point:<x> | half-and-irrationals");

  gmfp::ExperimentConfig common_cfg;
  Flags common_flags;
  auto* common = app.add_subcommand("common", "Round-robin common fixed point of three maps");
  add_experiment_flags(common, common_cfg, common_flags);
  common->add_option("--maps", common_cfg.maps, "Three comma-separated map names");

  gmfp::ExperimentConfig family_cfg;
  Flags family_flags;
  auto* family = app.add_subcommand("family", "Fixed points of a map family against its pointwise limit");
  add_experiment_flags(family, family_cfg, family_flags);
  family->add_option("--family", family_cfg.family, "halving-shift | constant-halving");
  family->add_option("--count", family_cfg.count, "Number of family members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gmfp::kExitUsage;
  }

  try {
    gmfp::ExperimentOutcome outcome;
    if (axioms->parsed()) {
      gmfp::apply_seed_env(axioms_cfg.seed);
      outcome = gmfp::run_axiom_check(axioms_cfg, std::cout);
    } else if (certify->parsed()) {
      gmfp::apply_seed_env(certify_cfg.seed);
      outcome = gmfp::run_certify(certify_cfg, std::cout);
    } else if (solve->parsed()) {
      outcome = gmfp::run_experiment(merge(solve, solve_cfg, solve_flags, gmfp::Scheme::power_picard), std::cout);
    } else if (common->parsed()) {
      auto cfg = merge(common, common_cfg, common_flags, gmfp::Scheme::common);
      cfg.scheme = gmfp::Scheme::common;
      outcome = gmfp::run_experiment(cfg, std::cout);
    } else {
      auto cfg = merge(family, family_cfg, family_flags, gmfp::Scheme::family);
      cfg.scheme = gmfp::Scheme::family;
      outcome = gmfp::run_experiment(cfg, std::cout);
    }
    std::cerr << outcome.summary.dump() << "\n";
    return outcome.status;
  } catch (const gmfp::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return gmfp::kExitUsage;
  } catch (const gmfp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gmfp::kExitVerdict;
  }
}
