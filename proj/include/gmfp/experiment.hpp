#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmfp/analysis.hpp"
#include "gmfp/gmetric.hpp"
#include "gmfp/solvers.hpp"

namespace gmfp {

/// Process exit statuses of the experiment runners.
enum ExitStatus : int { kExitOk = 0, kExitVerdict = 1, kExitUsage = 2 };

/// Bad configuration: unknown map/metric/family name, malformed literal,
/// out-of-range parameter. Maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Resolves "max-abs", "sum-abs" and the deliberately broken
/// "pairwise-only" (G(x,y,z) = |x - y|).
GMetric resolve_metric(std::string_view name, double tol_eq);
std::vector<std::string_view> metric_names();

struct MapFamily {
  std::string name;
  std::function<SelfMap(std::size_t)> member;
  SelfMap limit;
};

/// "halving-shift": T_i(x) = x/2 + 1/(2(i+1)) -> x/2.
/// "constant-halving": T_i(x) = x/2 for every i.
MapFamily resolve_family(std::string_view name);

enum class Scheme { picard, power_picard, subset, common, family };
std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::string map = "cascade";
  /// Three comma-separated map names for the common scheme.
  std::string maps;
  std::string family = "halving-shift";
  std::string metric = "max-abs";
  Scheme scheme = Scheme::power_picard;
  std::string x0 = "1";
  /// "p/q" literal, or "auto" for the common scheme (sampled ratio + slack).
  std::string lambda = "1/2";
  /// Subset B for the subset scheme: "auto", "interval:<lo>:<hi>",
  /// "point:<x>" or "half-and-irrationals".
  std::string subset = "auto";
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIter;
  int n_cap = kDefaultPowerCap;
  std::size_t samples = 128;
  std::size_t count = 8;  // family members
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty: trace to stdout

  /// Throws UsageError on an invalid combination.
  void validate() const;
};

/// Applies the keys present in `j` on top of `cfg`.
void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});
/// GMFP_SEED, when set, replaces the seed.
void apply_seed_env(std::uint64_t& seed);

// ---------------------------------------------------------------------------
// Serialization

struct RunMeta {
  std::string scheme;
  std::string map;
  std::string metric;
  std::uint64_t seed = 0;
};

/// Columns: step, power, point, distance, bound, cum_iter. One leading
/// "# key=value" comment line records the run metadata, seed included.
std::string trace_to_csv(const IterationTrace& trace, const RunMeta& meta);
nlohmann::json trace_to_json(const IterationTrace& trace);
nlohmann::json result_to_json(const FixedPointResult& result, const RunMeta& meta);
nlohmann::json certificate_to_json(const ContractionCertificate& cert);
nlohmann::json axiom_report_to_json(const AxiomReport& report);
nlohmann::json family_report_to_json(const FamilyReport& report);

// ---------------------------------------------------------------------------
// Runners. Each writes its report (to cfg.output, or `out` when empty) and a
// one-line JSON summary to `summary`, and returns the exit status.

struct ExperimentOutcome {
  int status = kExitOk;
  nlohmann::json summary;
};

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& out);

struct AxiomCheckConfig {
  std::string metric = "max-abs";
  /// "uniform-float", "uniform-rational", "exact-mixed", or any of those
  /// with an "equal:" prefix for the equal-triple sampler.
  std::string sampler = "uniform-float";
  std::size_t samples = 10000;
  std::size_t interpolation_points = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

ExperimentOutcome run_axiom_check(const AxiomCheckConfig& cfg, std::ostream& out);

struct CertifyConfig {
  std::string map = "cascade";
  std::string metric = "max-abs";
  std::string lambda = "1/2";
  int n_cap = kDefaultPowerCap;
  std::size_t samples = 128;
  std::uint64_t seed = 0;
  std::string output;
};

ExperimentOutcome run_certify(const CertifyConfig& cfg, std::ostream& out);

}  // namespace gmfp
