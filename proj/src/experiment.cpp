#include "gmfp/experiment.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gmfp/example_maps.hpp"

namespace gmfp {

using nlohmann::json;

GMetric resolve_metric(std::string_view name, double tol_eq) {
  if (name == "max-abs") return max_abs_metric(tol_eq);
  if (name == "sum-abs") {
    return GMetric{"sum-abs",
                   [](const Point& x, const Point& y, const Point& z) {
                     return abs_distance(x, y) + abs_distance(y, z) + abs_distance(z, x);
                   },
                   tol_eq, {}};
  }
  if (name == "pairwise-only") {
    return GMetric{"pairwise-only",
                   [](const Point& x, const Point& y, const Point&) { return abs_distance(x, y); },
                   tol_eq, {}};
  }
  throw UsageError("unknown metric '" + std::string(name) + "'");
}

std::vector<std::string_view> metric_names() { return {"max-abs", "sum-abs", "pairwise-only"}; }

MapFamily resolve_family(std::string_view name) {
  const SelfMap halving = scale_map(Real::rational(1, 2));
  if (name == "halving-shift") {
    return {"halving-shift",
            [](std::size_t i) {
              return affine_map(Real::rational(1, 2), Real::rational(1, 2 * (static_cast<long>(i) + 1)));
            },
            halving};
  }
  if (name == "constant-halving") {
    return {"constant-halving", [halving](std::size_t) { return halving; }, halving};
  }
  throw UsageError("unknown family '" + std::string(name) + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::picard: return "picard";
    case Scheme::power_picard: return "power-picard";
    case Scheme::subset: return "subset";
    case Scheme::common: return "common";
    case Scheme::family: return "family";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "picard") return Scheme::picard;
  if (s == "power-picard") return Scheme::power_picard;
  if (s == "subset") return Scheme::subset;
  if (s == "common") return Scheme::common;
  if (s == "family") return Scheme::family;
  throw UsageError("unknown scheme '" + std::string(s) + "'");
}

namespace {

Real parse_literal(const std::string& text, const char* what) {
  try {
    return Real::parse(text);
  } catch (const InputError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

bool lambda_required(Scheme s) { return s != Scheme::picard; }

}  // namespace

void ExperimentConfig::validate() const {
  if (samples < 1) throw UsageError("samples must be >= 1");
  if (max_iter < 1) throw UsageError("max_iter must be >= 1");
  if (n_cap < 1) throw UsageError("n_cap must be >= 1");
  if (!(tol >= 0)) throw UsageError("tol must be nonnegative");
  if (scheme == Scheme::family && count < 1) throw UsageError("count must be >= 1");
  if (lambda_required(scheme) && !(scheme == Scheme::common && lambda == "auto")) {
    const Real l = parse_literal(lambda, "lambda");
    if (!(Real(0) < l && l < Real(1))) throw UsageError("lambda must lie in (0, 1)");
  }
  (void)parse_literal(x0, "x0");
}

void apply_config_json(ExperimentConfig& cfg, const json& j) {
  auto literal = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return Real::floating(v.get<double>()).to_string();
    throw UsageError("expected a number or a literal string, got " + v.dump());
  };
  try {
    if (j.contains("map")) cfg.map = j.at("map").get<std::string>();
    if (j.contains("maps")) cfg.maps = j.at("maps").get<std::string>();
    if (j.contains("family")) cfg.family = j.at("family").get<std::string>();
    if (j.contains("metric")) cfg.metric = j.at("metric").get<std::string>();
    if (j.contains("scheme")) cfg.scheme = parse_scheme(j.at("scheme").get<std::string>());
    if (j.contains("x0")) cfg.x0 = literal(j.at("x0"));
    if (j.contains("lambda")) cfg.lambda = literal(j.at("lambda"));
    if (j.contains("subset")) cfg.subset = j.at("subset").get<std::string>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<std::size_t>();
    if (j.contains("n_cap")) cfg.n_cap = j.at("n_cap").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("count")) cfg.count = j.at("count").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::json;
      } else {
        throw UsageError("unknown format '" + f + "'");
      }
    }
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config_json(base, j);
  return base;
}

void apply_seed_env(std::uint64_t& seed) {
  const char* env = std::getenv("GMFP_SEED");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw UsageError(std::string("GMFP_SEED is not an integer: ") + env);
  seed = v;
}

// ---------------------------------------------------------------------------

std::string trace_to_csv(const IterationTrace& trace, const RunMeta& meta) {
  std::ostringstream os;
  os << "# scheme=" << meta.scheme << " map=" << meta.map << " metric=" << meta.metric
     << " seed=" << meta.seed << " verdict=" << to_string(trace.verdict)
     << " bounds=" << (trace.bounds_truncated ? "truncated" : "exact") << "\n";
  os << "step,power,point,distance,bound,cum_iter\n";
  char buf[64];
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    os << k << ',';
    if (k > 0 && k - 1 < trace.powers.size()) os << trace.powers[k - 1];
    os << ',' << trace.iterates[k].to_string() << ',';
    if (k > 0 && k - 1 < trace.distances.size()) {
      std::snprintf(buf, sizeof(buf), "%.17g", trace.distances[k - 1].to_double());
      os << buf;
    }
    os << ',';
    if (k > 0 && k - 1 < trace.bounds.size()) {
      std::snprintf(buf, sizeof(buf), "%.17g", trace.bounds[k - 1]);
      os << buf;
    }
    os << ',' << (k < trace.applications.size() ? trace.applications[k] : 0) << '\n';
  }
  return os.str();
}

namespace {

json reals(const std::vector<Real>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(r.to_string());
  return a;
}

json point_json(const Point& p) { return {{"literal", p.to_string()}, {"value", p.to_double()}, {"kind", to_string(p.kind())}}; }

json triple_json(const Triple& t) { return json::array({t.x.to_string(), t.y.to_string(), t.z.to_string()}); }

}  // namespace

json trace_to_json(const IterationTrace& trace) {
  json iterates = json::array();
  for (const auto& p : trace.iterates) iterates.push_back(p.to_string());
  json j = {
      {"scheme", trace.scheme},
      {"iterates", iterates},
      {"powers", trace.powers},
      {"distances", reals(trace.distances)},
      {"bounds", trace.bounds},
      {"cum_iter", trace.applications},
      {"verdict", to_string(trace.verdict)},
      {"candidate", trace.candidate.to_string()},
      {"bounds_truncated", trace.bounds_truncated},
      {"bounds_ok", trace.bounds_ok()},
  };
  j["first_bound_violation"] =
      trace.first_bound_violation ? json(*trace.first_bound_violation) : json(nullptr);
  j["offending_point"] = trace.offending_point ? json(trace.offending_point->to_string()) : json(nullptr);
  return j;
}

json result_to_json(const FixedPointResult& result, const RunMeta& meta) {
  return {
      {"scheme", meta.scheme},
      {"map", meta.map},
      {"metric", meta.metric},
      {"seed", meta.seed},
      {"candidate", point_json(result.candidate)},
      {"residual", result.residual.to_string()},
      {"iterations", result.iterations},
      {"trace", trace_to_json(result.trace)},
  };
}

json certificate_to_json(const ContractionCertificate& cert) {
  json schedule = json::array();
  for (const auto& e : cert.schedule) {
    schedule.push_back({{"x", e.x.to_string()}, {"n", e.power}, {"worst_ratio", e.worst_ratio.to_string()}});
  }
  json witnesses = json::array();
  for (const auto& t : cert.witness_samples) witnesses.push_back(triple_json(t));
  return {
      {"lambda", cert.lambda.to_string()},
      {"n_cap", cert.n_cap},
      {"power_schedule", schedule},
      {"witness_samples", witnesses},
      {"worst_ratio", cert.worst_ratio.to_string()},
      {"worst_ratio_value", cert.worst_ratio.to_double()},
  };
}

json axiom_report_to_json(const AxiomReport& report) {
  json axioms = json::object();
  for (std::size_t i = 0; i < kAxiomCount; ++i) {
    const auto& t = report.tallies[i];
    json viol = json::array();
    for (const auto& v : t.violations) {
      json e = {{"sample_index", v.sample_index},
                {"triple", triple_json(v.triple)},
                {"lhs", v.lhs.to_string()},
                {"rhs", v.rhs.to_string()}};
      if (v.interpolation) e["a"] = v.interpolation->to_string();
      viol.push_back(std::move(e));
    }
    axioms[to_string(static_cast<Axiom>(i))] = {{"checked", t.checked},
                                                 {"passed", t.passed},
                                                 {"vacuous", t.vacuous},
                                                 {"violation_count", t.violation_count},
                                                 {"violations", viol}};
  }
  return {
      {"metric", report.metric},
      {"sampler", report.sampler},
      {"seed", report.seed},
      {"requested_samples", report.requested_samples},
      {"samples", report.samples},
      {"interpolation_points", report.interpolation_points},
      {"enumerated", report.enumerated},
      {"total_violations", report.total_violations()},
      {"axioms", axioms},
  };
}

json family_report_to_json(const FamilyReport& report) {
  json members = json::array();
  for (const auto& m : report.members) {
    json e = {{"index", m.index}};
    if (m.fixed_point) {
      e["fixed_point"] = m.fixed_point->to_string();
      e["fixed_point_value"] = m.fixed_point->to_double();
      e["residual"] = m.residual.to_string();
      e["distance"] = m.distance.to_double();
    }
    e["error"] = m.error ? json(*m.error) : json(nullptr);
    members.push_back(std::move(e));
  }
  return {
      {"limit_fixed_point", report.limit_fixed_point.to_string()},
      {"limit_residual", report.limit_residual.to_string()},
      {"members", members},
      {"strictly_decreasing", report.strictly_decreasing},
      {"tail_below_tol", report.tail_below_tol},
      {"first_below_tol", report.first_below_tol ? json(*report.first_below_tol) : json(nullptr)},
      {"failed_members", report.failed_members},
  };
}

// ---------------------------------------------------------------------------

namespace {

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

SelfMap map_or_usage(std::string_view name) {
  try {
    return examples::resolve_map(name);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
}

std::function<bool(const Point&)> subset_predicate(const ExperimentConfig& cfg, const Point& x0) {
  std::string desc = cfg.subset;
  if (desc == "auto") {
    if (cfg.map == "rational-reflection") {
      desc = "half-and-irrationals";
    } else if (cfg.map == "rational-identity") {
      desc = "point:" + x0.to_string();
    } else if (cfg.map == "cascade") {
      desc = "interval:0:1/2";
    } else {
      desc = "interval:0:1";
    }
  }
  if (desc == "half-and-irrationals") {
    // {1/2} together with irrationals only: no other rational may be in B.
    const Real half = Real::rational(1, 2);
    return [half](const Point& p) { return p == half || p.kind() == PointKind::irrational; };
  }
  if (desc.starts_with("point:")) {
    const Real only = parse_literal(desc.substr(6), "subset point");
    return [only](const Point& p) { return p == only; };
  }
  if (desc.starts_with("interval:")) {
    const auto parts = split(desc.substr(9), ':');
    if (parts.size() != 2) throw UsageError("subset interval needs 'interval:<lo>:<hi>'");
    const Real lo = parse_literal(parts[0], "subset lower end");
    const Real hi = parse_literal(parts[1], "subset upper end");
    return [lo, hi](const Point& p) { return lo <= p && p <= hi; };
  }
  throw UsageError("unknown subset '" + cfg.subset + "'");
}

Sampler witness_sampler(const std::string& map, const Point& x0) {
  if (!x0.is_exact()) return Sampler::uniform_float();
  if (map == "cascade") return Sampler::dyadic_shells(48);
  return Sampler::exact_mixed();
}

json summary_for(const FixedPointResult& r, const RunMeta& meta, int status) {
  return {
      {"scheme", meta.scheme},
      {"map", meta.map},
      {"metric", meta.metric},
      {"seed", meta.seed},
      {"verdict", to_string(r.trace.verdict)},
      {"candidate", r.candidate.to_string()},
      {"candidate_value", r.candidate.to_double()},
      {"residual", r.residual.to_string()},
      {"residual_value", r.residual.to_double()},
      {"iterations", r.iterations},
      {"bounds_ok", r.trace.bounds_ok()},
      {"bounds_truncated", r.trace.bounds_truncated},
      {"exit_status", status},
  };
}

void write_summary(const std::string& output, const json& summary) {
  if (output.empty()) return;
  emit(output + ".summary.json", summary.dump(2) + "\n", std::cerr);
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Point x0 = parse_literal(cfg.x0, "x0");
  const GMetric g = resolve_metric(cfg.metric, x0.is_exact() ? kExactTolerance : kFloatTolerance);
  Rng rng(cfg.seed);

  RunMeta meta{to_string(cfg.scheme), cfg.map, cfg.metric, cfg.seed};
  ExperimentOutcome outcome;

  try {
    if (cfg.scheme == Scheme::family) {
      const MapFamily fam = resolve_family(cfg.family);
      meta.map = fam.name;
      FamilyOptions opts;
      opts.count = cfg.count;
      opts.tol = cfg.tol;
      opts.max_iter = cfg.max_iter;
      opts.condition_samples =
          sample_triples(x0.is_exact() ? Sampler::uniform_rational() : Sampler::uniform_float(), cfg.samples, rng);
      const Real lambda = parse_literal(cfg.lambda, "lambda");
      const FamilyReport rep = family_limit_fixed_points(fam.member, fam.limit, g, lambda, x0, opts);
      json body = family_report_to_json(rep);
      body["seed"] = cfg.seed;
      body["family"] = fam.name;
      body["lambda"] = lambda.to_string();
      body["tol"] = cfg.tol;
      emit(cfg.output, body.dump(2) + "\n", out);
      outcome.status = rep.ok() ? kExitOk : kExitVerdict;
      outcome.summary = {{"scheme", "family"},
                         {"family", fam.name},
                         {"seed", cfg.seed},
                         {"verdict", rep.ok() ? "converged" : (rep.failed_members > 0 ? "member-failure"
                                                                                      : "tail-not-below-tol")},
                         {"strictly_decreasing", rep.strictly_decreasing},
                         {"limit_fixed_point", rep.limit_fixed_point.to_string()},
                         {"exit_status", outcome.status}};
      write_summary(cfg.output, outcome.summary);
      return outcome;
    }

    FixedPointResult result;
    if (cfg.scheme == Scheme::common) {
      const auto names = split(cfg.maps.empty() ? cfg.map + "," + cfg.map + "," + cfg.map : cfg.maps, ',');
      if (names.size() != 3) throw UsageError("common scheme needs exactly three maps");
      const MapTriple maps{map_or_usage(names[0]), map_or_usage(names[1]), map_or_usage(names[2])};
      meta.map = names[0] + "," + names[1] + "," + names[2];
      Real lambda;
      if (cfg.lambda == "auto") {
        const auto triples = sample_triples(
            x0.is_exact() ? Sampler::uniform_rational() : Sampler::uniform_float(), cfg.samples, rng);
        const EqfinRatio ratio = sampled_eqfin_ratio(maps, {}, g, triples);
        if (!ratio.witness) throw UsageError("lambda auto: every sampled triple is degenerate");
        lambda = ratio.ratio + Real::rational(1, 20);
        if (!(lambda < Real(1))) {
          throw ConditionViolation({0, ratio.witness->x, ratio.witness->y, ratio.witness->z, Real(0), Real(0),
                                    Real(0), ratio.ratio, Real(1)});
        }
      } else {
        lambda = parse_literal(cfg.lambda, "lambda");
      }
      result = common_fixed_point(maps, {}, g, lambda, x0, {cfg.tol, cfg.max_iter});
    } else {
      const SelfMap t = map_or_usage(cfg.map);
      if (cfg.scheme == Scheme::picard) {
        result = picard(t, g, x0, {cfg.tol, cfg.max_iter});
      } else {
        PowerSolveOptions opts;
        opts.lambda = parse_literal(cfg.lambda, "lambda");
        opts.n_cap = cfg.n_cap;
        opts.tol = cfg.tol;
        opts.max_iter = cfg.max_iter;
        const auto witnesses = sample_pairs(witness_sampler(cfg.map, x0), cfg.samples, rng);
        if (cfg.scheme == Scheme::power_picard) {
          result = power_picard(t, g, x0, witnesses, opts);
        } else {
          result = subset_power_picard(t, g, subset_predicate(cfg, x0), x0, witnesses, opts);
        }
      }
    }

    const bool ok = result.converged() && result.trace.bounds_ok();
    outcome.status = ok ? kExitOk : kExitVerdict;
    if (cfg.format == OutputFormat::csv) {
      emit(cfg.output, trace_to_csv(result.trace, meta), out);
    } else {
      emit(cfg.output, result_to_json(result, meta).dump(2) + "\n", out);
    }
    outcome.summary = summary_for(result, meta, outcome.status);
  } catch (const ConditionViolation& e) {
    const auto& w = e.witness();
    outcome.status = kExitVerdict;
    outcome.summary = {{"scheme", meta.scheme}, {"map", meta.map}, {"metric", meta.metric}, {"seed", meta.seed},
                       {"verdict", "condition-violation"}, {"step", w.step},
                       {"witness", json::array({w.x.to_string(), w.y.to_string(), w.z.to_string()})},
                       {"lhs", w.lhs.to_string()}, {"rhs", w.rhs.to_string()}, {"message", e.what()},
                       {"exit_status", outcome.status}};
    emit(cfg.output, outcome.summary.dump(2) + "\n", out);
  } catch (const CommonFixityError& e) {
    outcome.status = kExitVerdict;
    outcome.summary = {{"scheme", meta.scheme}, {"map", meta.map}, {"metric", meta.metric}, {"seed", meta.seed},
                       {"verdict", "common-fixity-failure"}, {"map_index", e.map_index() + 1},
                       {"residual", e.residual().to_string()}, {"message", e.what()},
                       {"exit_status", outcome.status}};
    emit(cfg.output, outcome.summary.dump(2) + "\n", out);
  } catch (const UsageError&) {
    throw;
  } catch (const InputError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  write_summary(cfg.output, outcome.summary);
  return outcome;
}

// ---------------------------------------------------------------------------

namespace {

Sampler axiom_sampler(std::string name) {
  bool equal = false;
  if (name.starts_with("equal:")) {
    equal = true;
    name = name.substr(6);
  } else if (name == "equal") {
    equal = true;
    name = "uniform-float";
  }
  Sampler s = [&] {
    if (name == "uniform-float") return Sampler::uniform_float();
    if (name == "uniform-rational") return Sampler::uniform_rational();
    if (name == "exact-mixed") return Sampler::exact_mixed();
    throw UsageError("unknown sampler '" + name + "'");
  }();
  return equal ? s.equal_triples() : s;
}

}  // namespace

ExperimentOutcome run_axiom_check(const AxiomCheckConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
  const Sampler sampler = axiom_sampler(cfg.sampler);
  const bool floats = cfg.sampler.find("float") != std::string::npos || cfg.sampler == "equal";
  const GMetric g = resolve_metric(cfg.metric, floats ? kFloatTolerance : kExactTolerance);
  AxiomCheckOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.interpolation_points = cfg.interpolation_points;
  const AxiomReport rep = verify_axioms(g, sampler, opts);

  ExperimentOutcome outcome;
  outcome.status = rep.ok() ? kExitOk : kExitVerdict;
  emit(cfg.output, axiom_report_to_json(rep).dump(2) + "\n", out);
  outcome.summary = {{"metric", rep.metric},      {"sampler", rep.sampler},
                     {"seed", rep.seed},          {"samples", rep.samples},
                     {"violations", rep.total_violations()}, {"exit_status", outcome.status}};
  write_summary(cfg.output, outcome.summary);
  return outcome;
}

ExperimentOutcome run_certify(const CertifyConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
  if (cfg.n_cap < 1) throw UsageError("n_cap must be >= 1");
  const SelfMap t = map_or_usage(cfg.map);
  const GMetric g = resolve_metric(cfg.metric, kExactTolerance);
  const Real lambda = parse_literal(cfg.lambda, "lambda");
  if (!(Real(0) < lambda && lambda < Real(1))) throw UsageError("lambda must lie in (0, 1)");

  Rng rng(cfg.seed);
  const Sampler sampler = witness_sampler(cfg.map, Real(0));
  std::vector<Point> points;
  for (std::size_t i = 0; i < cfg.samples; ++i) points.push_back(sampler.point(rng));
  const auto witnesses = sample_pairs(sampler, cfg.samples, rng);

  ExperimentOutcome outcome;
  json body = {{"map", cfg.map}, {"metric", cfg.metric}, {"seed", cfg.seed}, {"samples", cfg.samples}};
  try {
    // Power-1 estimate over triples with nonzero G.
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
      Triple tr{points[i], witnesses[i].first, witnesses[i].second};
      if (g(tr.x, tr.y, tr.z).sign() != 0) triples.push_back(std::move(tr));
    }
    if (!triples.empty()) {
      const Real est = estimate_lambda(t, g, 1, triples);
      body["lambda_estimate_power1"] = est.to_string();
      body["lambda_estimate_power1_value"] = est.to_double();
    }
    const ContractionCertificate cert = certify(t, g, points, witnesses, lambda, cfg.n_cap);
    body["certificate"] = certificate_to_json(cert);
    body["status"] = "certified";
    outcome.status = kExitOk;
  } catch (const CertificateNotFound& e) {
    body["status"] = "certificate-not-found";
    body["point"] = e.point().to_string();
    body["best_ratio"] = e.best_ratio().to_string();
    body["best_power"] = e.best_power();
    outcome.status = kExitVerdict;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  emit(cfg.output, body.dump(2) + "\n", out);
  outcome.summary = {{"map", cfg.map}, {"status", body["status"]}, {"seed", cfg.seed}, {"exit_status", outcome.status}};
  write_summary(cfg.output, outcome.summary);
  return outcome;
}

}  // namespace gmfp
