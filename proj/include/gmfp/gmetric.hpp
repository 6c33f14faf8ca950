#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmfp/random.hpp"
#include "gmfp/real.hpp"

namespace gmfp {

/// Equality slack for spaces of exact points.
inline constexpr double kExactTolerance = 0.0;
/// Equality slack for spaces of float points.
inline constexpr double kFloatTolerance = 1e-12;

using PairDistance = std::function<Real(const Point&, const Point&)>;
using GFunction = std::function<Real(const Point&, const Point&, const Point&)>;

/// A candidate G-metric: a symmetric, nonnegative ternary distance.
///
/// Nothing here enforces the axioms; verify_axioms() checks them on samples.
struct GMetric {
  std::string name;
  GFunction eval;
  double tol_eq = kExactTolerance;
  /// Optional double-only evaluation, used when every argument is a float.
  std::function<double(double, double, double)> eval_float;

  Real operator()(const Point& x, const Point& y, const Point& z) const { return eval(x, y, z); }
};

struct Triple {
  Point x;
  Point y;
  Point z;
};

using PointPair = std::pair<Point, Point>;

/// |x - y|.
Real abs_distance(const Point& x, const Point& y);

/// G(x,y,z) = max{d(x,y), d(y,z), d(z,x)}.
GMetric g_from_base_metric(PairDistance d, std::string name, double tol_eq = kExactTolerance);

/// The max construction over |x - y|, registered as "max-abs".
GMetric max_abs_metric(double tol_eq = kExactTolerance);

/// Distinctness as used by G2/G3: exact comparison for two exact points,
/// |x - y| > tol_eq as soon as a float is involved.
bool points_distinct(const GMetric& g, const Point& x, const Point& y);

// ---------------------------------------------------------------------------
// Sampling

/// Seeded source of points and of the triples built from them.
///
/// A finite sampler carries its support; verify_axioms enumerates all triples
/// of a finite support when that is no larger than the requested sample
/// count.
class Sampler {
 public:
  using DrawFn = std::function<Point(Rng&)>;

  Sampler(std::string name, DrawFn draw);

  /// Floats uniform in [lo, hi].
  static Sampler uniform_float(double lo = 0.0, double hi = 1.0);
  /// Rationals k/q in [0, 1] with q drawn uniformly from [1, max_denominator].
  static Sampler uniform_rational(std::uint32_t max_denominator = 1u << 16);
  /// Rationals spread over the dyadic shells [2^-n, 2^-(n-1)], n uniform in
  /// [1, max_depth], plus the endpoint 0 occasionally.
  static Sampler dyadic_shells(int max_depth);
  /// Exact points in [0, 1]: rationals and a + b*sqrt2 forms in equal measure.
  static Sampler exact_mixed(std::uint32_t max_denominator = 1u << 12);
  /// Uniform draws from a fixed finite set.
  static Sampler finite(std::vector<Point> support);

  /// Same point stream, but triples are (p, p, p).
  Sampler equal_triples() const;

  Point point(Rng& rng) const { return draw_(rng); }
  Triple triple(Rng& rng) const;
  PointPair pair(Rng& rng) const;

  const std::string& name() const { return name_; }
  bool is_finite() const { return support_.has_value(); }
  bool emits_equal_triples() const { return equal_; }
  std::span<const Point> support() const;

 private:
  std::string name_;
  DrawFn draw_;
  std::optional<std::vector<Point>> support_;
  bool equal_ = false;
};

std::vector<Triple> sample_triples(const Sampler& s, std::size_t count, Rng& rng);
std::vector<PointPair> sample_pairs(const Sampler& s, std::size_t count, Rng& rng);

// ---------------------------------------------------------------------------
// Axiom verification

enum class Axiom { G1 = 0, G2, G3, G4, G5 };
inline constexpr std::size_t kAxiomCount = 5;
inline constexpr std::size_t kViolationCap = 32;

std::string to_string(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::size_t sample_index;  // index into the seeded triple stream
  Triple triple;
  std::optional<Point> interpolation;  // the point a of G5
  Real lhs;
  Real rhs;
};

struct AxiomTally {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t vacuous = 0;  // hypothesis (x != y / z != y) not met; counted as passed
  std::size_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first kViolationCap only
};

struct AxiomReport {
  std::string metric;
  std::string sampler;
  std::uint64_t seed = 0;
  std::size_t requested_samples = 0;
  std::size_t samples = 0;
  std::size_t interpolation_points = 0;
  bool enumerated = false;  // finite space exhausted: every triple was checked
  std::array<AxiomTally, kAxiomCount> tallies{};

  const AxiomTally& tally(Axiom a) const { return tallies[static_cast<std::size_t>(a)]; }
  std::size_t total_violations() const;
  bool ok() const { return total_violations() == 0; }
};

struct AxiomCheckOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  /// Pool size for the point a of G5. Every triple is checked against the
  /// whole pool plus a = x.
  std::size_t interpolation_points = 1000;
};

/// Checks (G1)-(G5) on seeded sampled triples.
AxiomReport verify_axioms(const GMetric& g, const Sampler& sampler, const AxiomCheckOptions& opts);

// ---------------------------------------------------------------------------
// Sequential notions

/// Tail suprema of the three scalar G-convergence criteria.
struct ConvergenceReport {
  Real limit_term_term;  // sup G(x, x_n, x_n)
  Real term_limit_limit;  // sup G(x_n, x, x)
  Real limit_pairwise;  // sup G(x, x_n, x_m)
  std::size_t tail_start = 0;
  bool all_below = false;
  bool all_at_or_above = false;
  bool consistent() const { return all_below || all_at_or_above; }
};

ConvergenceReport check_convergence_equivalence(const GMetric& g, std::span<const Point> seq,
                                                const Point& limit, std::size_t tail_len,
                                                double tol);

struct CauchyResult {
  bool cauchy = false;
  /// Least N whose tail satisfies the bound (when cauchy).
  std::size_t witness_index = 0;
  /// A pair (n, m) in the shortest admissible tail with G(x_n, x_m, x_m) >= eps.
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
};

/// G-Cauchy test on a finite prefix. The tail starting at N must keep at
/// least two entries, so a one-element tail never certifies a prefix.
CauchyResult is_cauchy_prefix(const GMetric& g, std::span<const Point> seq, double eps);

}  // namespace gmfp
