#include "gmfp/gmetric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "gmfp/errors.hpp"

namespace gmfp {

Real abs_distance(const Point& x, const Point& y) { return abs(x - y); }

GMetric g_from_base_metric(PairDistance d, std::string name, double tol_eq) {
  GMetric g;
  g.name = std::move(name);
  g.tol_eq = tol_eq;
  g.eval = [d = std::move(d)](const Point& x, const Point& y, const Point& z) {
    return max(max(d(x, y), d(y, z)), d(z, x));
  };
  return g;
}

GMetric max_abs_metric(double tol_eq) {
  GMetric g = g_from_base_metric(abs_distance, "max-abs", tol_eq);
  g.eval_float = [](double x, double y, double z) {
    return std::max({std::abs(x - y), std::abs(y - z), std::abs(z - x)});
  };
  return g;
}

bool points_distinct(const GMetric& g, const Point& x, const Point& y) {
  if (x.is_exact() && y.is_exact()) return !(x == y);
  return std::abs(x.to_double() - y.to_double()) > g.tol_eq;
}

// ---------------------------------------------------------------------------

Sampler::Sampler(std::string name, DrawFn draw) : name_(std::move(name)), draw_(std::move(draw)) {}

Sampler Sampler::uniform_float(double lo, double hi) {
  if (!(lo <= hi)) throw InputError("uniform_float: empty range");
  return Sampler("uniform-float", [lo, hi](Rng& rng) {
    return Real::floating(lo + (hi - lo) * unit_double(rng));
  });
}

Sampler Sampler::uniform_rational(std::uint32_t max_denominator) {
  if (max_denominator == 0) throw InputError("uniform_rational: max_denominator must be positive");
  return Sampler("uniform-rational", [max_denominator](Rng& rng) {
    const auto q = uniform_index(rng, 1, max_denominator);
    const auto k = uniform_index(rng, 0, q);
    Rational v(static_cast<unsigned long>(k), static_cast<unsigned long>(q));
    v.canonicalize();
    return Real(v);
  });
}

Sampler Sampler::dyadic_shells(int max_depth) {
  if (max_depth < 1) throw InputError("dyadic_shells: max_depth must be >= 1");
  return Sampler("dyadic-shells", [max_depth](Rng& rng) {
    // 1 in 64 draws hits the accumulation point 0.
    if (uniform_index(rng, 0, 63) == 0) return Real(0);
    const auto n = static_cast<unsigned long>(uniform_index(rng, 1, static_cast<std::uint64_t>(max_depth)));
    constexpr unsigned long kSteps = 1ul << 20;
    const auto k = static_cast<unsigned long>(uniform_index(rng, 0, kSteps));
    // 2^-n (1 + k / kSteps)
    Rational v(kSteps + k, kSteps);
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), n);
    v.canonicalize();
    return Real(v);
  });
}

Sampler Sampler::exact_mixed(std::uint32_t max_denominator) {
  if (max_denominator == 0) throw InputError("exact_mixed: max_denominator must be positive");
  const Sampler rationals = uniform_rational(max_denominator);
  return Sampler("exact-mixed", [rationals, max_denominator](Rng& rng) {
    if (uniform_index(rng, 0, 1) == 0) return rationals.point(rng);
    const Surd zero;
    const Surd one(Rational(1));
    while (true) {
      const auto q = uniform_index(rng, 1, max_denominator);
      const auto k = uniform_index(rng, 1, q);
      Rational b(static_cast<unsigned long>(k), 2 * static_cast<unsigned long>(q));
      b.canonicalize();
      if (uniform_index(rng, 0, 1) == 0) b = -b;
      const Rational a = rationals.point(rng).as_rational();
      const Surd s(a, b);
      if (zero <= s && s <= one) return Real(s);
    }
  });
}

Sampler Sampler::finite(std::vector<Point> support) {
  if (support.empty()) throw InputError("finite sampler needs a nonempty support");
  auto shared = std::make_shared<const std::vector<Point>>(support);
  Sampler s("finite", [shared](Rng& rng) {
    return (*shared)[uniform_index(rng, 0, shared->size() - 1)];
  });
  s.support_ = std::move(support);
  return s;
}

Sampler Sampler::equal_triples() const {
  Sampler s = *this;
  s.equal_ = true;
  s.name_ += "/equal-triples";
  return s;
}

Triple Sampler::triple(Rng& rng) const {
  if (equal_) {
    Point p = point(rng);
    return {p, p, p};
  }
  Point x = point(rng);
  Point y = point(rng);
  Point z = point(rng);
  return {std::move(x), std::move(y), std::move(z)};
}

PointPair Sampler::pair(Rng& rng) const {
  Point y = point(rng);
  Point z = point(rng);
  return {std::move(y), std::move(z)};
}

std::span<const Point> Sampler::support() const {
  if (!support_) return {};
  return *support_;
}

std::vector<Triple> sample_triples(const Sampler& s, std::size_t count, Rng& rng) {
  std::vector<Triple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.triple(rng));
  return out;
}

std::vector<PointPair> sample_pairs(const Sampler& s, std::size_t count, Rng& rng) {
  std::vector<PointPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.pair(rng));
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::G1: return "G1";
    case Axiom::G2: return "G2";
    case Axiom::G3: return "G3";
    case Axiom::G4: return "G4";
    case Axiom::G5: return "G5";
  }
  return "?";
}

std::size_t AxiomReport::total_violations() const {
  std::size_t n = 0;
  for (const auto& t : tallies) n += t.violation_count;
  return n;
}

namespace {

class AxiomChecker {
 public:
  AxiomChecker(const GMetric& g, std::span<const Point> interpolation, AxiomReport& report)
      : g_(g), interpolation_(interpolation), report_(report) {
    if (std::all_of(interpolation.begin(), interpolation.end(), [](const Point& p) { return !p.is_exact(); })) {
      for (const Point& p : interpolation) pool_float_.push_back(p.to_double());
    }
  }

  void check(std::size_t index, const Triple& t) {
    const auto& [x, y, z] = t;
    const double tol = g_.tol_eq;

    // G1: G(x,x,x) = 0.
    const Real g1 = g_(x, x, x);
    record(Axiom::G1, index, t, std::nullopt, g1, Real(0), less_equal_with_slack(g1, Real(0), tol));

    // G2: G(x,x,y) > 0 for x != y.
    const Real gxxy = g_(x, x, y);
    if (points_distinct(g_, x, y)) {
      record(Axiom::G2, index, t, std::nullopt, gxxy, Real(0), gxxy.sign() > 0);
    } else {
      vacuous(Axiom::G2);
    }

    // G3: G(x,x,y) <= G(x,y,z) for z != y.
    const Real gxyz = g_(x, y, z);
    if (points_distinct(g_, z, y)) {
      record(Axiom::G3, index, t, std::nullopt, gxxy, gxyz, less_equal_with_slack(gxxy, gxyz, tol));
    } else {
      vacuous(Axiom::G3);
    }

    // G4: all six permutations agree within tol_eq.
    {
      const std::array<Real, 5> perms = {g_(x, z, y), g_(y, x, z), g_(y, z, x), g_(z, x, y), g_(z, y, x)};
      bool ok = true;
      Real worst = gxyz;
      for (const Real& p : perms) {
        if (!less_equal_with_slack(abs(p - gxyz), Real(0), tol)) {
          ok = false;
          worst = p;
          break;
        }
      }
      record(Axiom::G4, index, t, std::nullopt, gxyz, worst, ok);
    }

    // G5: G(x,y,z) <= G(x,a,a) + G(a,y,z), a = x and every pool point.
    {
      bool ok = true;
      std::optional<Point> bad_a;
      Real bad_rhs;
      auto try_a = [&](const Point& a) {
        const Real rhs = g_(x, a, a) + g_(a, y, z);
        if (!less_equal_with_slack(gxyz, rhs, tol)) {
          ok = false;
          bad_a = a;
          bad_rhs = rhs;
        }
      };
      try_a(x);
      const bool floats = g_.eval_float && !pool_float_.empty() && !x.is_exact() && !y.is_exact() &&
                          !z.is_exact() && !gxyz.is_exact();
      if (ok && floats) {
        const double xd = x.to_double(), yd = y.to_double(), zd = z.to_double();
        const double lhs = gxyz.to_double();
        for (std::size_t i = 0; i < pool_float_.size(); ++i) {
          const double a = pool_float_[i];
          if (!(lhs <= g_.eval_float(xd, a, a) + g_.eval_float(a, yd, zd) + tol)) {
            try_a(interpolation_[i]);  // redo exactly to record the witness
            if (!ok) break;
          }
        }
      } else {
        for (std::size_t i = 0; ok && i < interpolation_.size(); ++i) try_a(interpolation_[i]);
      }
      record(Axiom::G5, index, t, bad_a, gxyz, ok ? gxyz : bad_rhs, ok);
    }
  }

 private:
  AxiomTally& tally(Axiom a) { return report_.tallies[static_cast<std::size_t>(a)]; }

  void vacuous(Axiom a) {
    auto& t = tally(a);
    ++t.checked;
    ++t.passed;
    ++t.vacuous;
  }

  void record(Axiom a, std::size_t index, const Triple& t, std::optional<Point> interp, Real lhs,
              Real rhs, bool ok) {
    auto& tl = tally(a);
    ++tl.checked;
    if (ok) {
      ++tl.passed;
      return;
    }
    ++tl.violation_count;
    if (tl.violations.size() < kViolationCap) {
      tl.violations.push_back({a, index, t, std::move(interp), std::move(lhs), std::move(rhs)});
    }
  }

  const GMetric& g_;
  std::span<const Point> interpolation_;
  std::vector<double> pool_float_;
  AxiomReport& report_;
};

}  // namespace

AxiomReport verify_axioms(const GMetric& g, const Sampler& sampler, const AxiomCheckOptions& opts) {
  if (opts.samples < 1) throw InputError("verify_axioms: need at least one sample");
  AxiomReport report;
  report.metric = g.name;
  report.sampler = sampler.name();
  report.seed = opts.seed;
  report.requested_samples = opts.samples;

  Rng rng(opts.seed);

  std::vector<Point> pool;
  std::vector<Triple> triples;
  if (sampler.is_finite()) {
    const auto support = sampler.support();
    pool.assign(support.begin(), support.end());
    const std::size_t m = support.size();
    const std::size_t full = sampler.emits_equal_triples() ? m : m * m * m;
    if (full <= opts.samples) {
      report.enumerated = true;
      triples.reserve(full);
      if (sampler.emits_equal_triples()) {
        for (const auto& p : support) triples.push_back({p, p, p});
      } else {
        for (const auto& x : support)
          for (const auto& y : support)
            for (const auto& z : support) triples.push_back({x, y, z});
      }
    }
  } else {
    pool.reserve(opts.interpolation_points);
    for (std::size_t i = 0; i < opts.interpolation_points; ++i) pool.push_back(sampler.point(rng));
  }
  if (!report.enumerated) triples = sample_triples(sampler, opts.samples, rng);

  report.samples = triples.size();
  report.interpolation_points = pool.size();

  AxiomChecker checker(g, pool, report);
  for (std::size_t i = 0; i < triples.size(); ++i) checker.check(i, triples[i]);
  return report;
}

// ---------------------------------------------------------------------------

ConvergenceReport check_convergence_equivalence(const GMetric& g, std::span<const Point> seq,
                                                const Point& limit, std::size_t tail_len,
                                                double tol) {
  if (tail_len < 2 || seq.size() < tail_len) {
    throw InputError("check_convergence_equivalence: need seq.size() >= tail_len >= 2");
  }
  ConvergenceReport r;
  r.tail_start = seq.size() - tail_len;
  const auto tail = seq.subspan(r.tail_start);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    r.limit_term_term = max(r.limit_term_term, g(limit, tail[i], tail[i]));
    r.term_limit_limit = max(r.term_limit_limit, g(tail[i], limit, limit));
    for (std::size_t j = i; j < tail.size(); ++j) {
      r.limit_pairwise = max(r.limit_pairwise, g(limit, tail[i], tail[j]));
    }
  }
  const Real t = Real::exact_from_double(tol);
  r.all_below = r.limit_term_term < t && r.term_limit_limit < t && r.limit_pairwise < t;
  r.all_at_or_above = r.limit_term_term >= t && r.term_limit_limit >= t && r.limit_pairwise >= t;
  return r;
}

CauchyResult is_cauchy_prefix(const GMetric& g, std::span<const Point> seq, double eps) {
  if (!(eps > 0)) throw InputError("is_cauchy_prefix: eps must be positive");
  if (seq.empty()) throw InputError("is_cauchy_prefix: empty sequence");
  const std::size_t len = seq.size();
  if (len == 1) return {true, 0, std::nullopt};

  const Real bound = Real::exact_from_double(eps);
  // tail_sup[N] = max over n, m >= N of G(x_n, x_m, x_m); argmax kept alongside.
  std::vector<Real> tail_sup(len);
  std::vector<std::pair<std::size_t, std::size_t>> arg(len);
  tail_sup[len - 1] = g(seq[len - 1], seq[len - 1], seq[len - 1]);
  arg[len - 1] = {len - 1, len - 1};
  for (std::size_t n = len - 1; n-- > 0;) {
    tail_sup[n] = tail_sup[n + 1];
    arg[n] = arg[n + 1];
    for (std::size_t m = n; m < len; ++m) {
      const Real a = g(seq[n], seq[m], seq[m]);
      if (tail_sup[n] < a) {
        tail_sup[n] = a;
        arg[n] = {n, m};
      }
      const Real b = g(seq[m], seq[n], seq[n]);
      if (tail_sup[n] < b) {
        tail_sup[n] = b;
        arg[n] = {m, n};
      }
    }
  }
  for (std::size_t n = 0; n + 2 <= len; ++n) {
    if (tail_sup[n] < bound) return {true, n, std::nullopt};
  }
  return {false, len - 2, arg[len - 2]};
}

}  // namespace gmfp
