#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmfp/analysis.hpp"
#include "gmfp/errors.hpp"
#include "gmfp/gmetric.hpp"
#include "gmfp/self_map.hpp"

namespace gmfp {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxIter = 10000;
/// Float slack allowed on a priori bound checks.
inline constexpr double kBoundSlack = 1e-9;

enum class Verdict { converged, max_iters, certificate_failure, left_subset };

std::string to_string(Verdict v);

/// Record of one solve.
///
/// distances[k] is G(x_k, x_{k+1}, x_{k+1}) for single-map schemes and the
/// consecutive-triple distance G(x_k, x_{k+1}, x_{k+2}) for the round-robin
/// scheme. bounds[k] is the a priori bound for distances[k]; it is empty for
/// plain Picard, which carries no contraction constant. Orbit-based bounds use
/// a truncated supremum (see bounds_truncated).
struct IterationTrace {
  std::string scheme;
  std::vector<Point> iterates;
  std::vector<int> powers;  // empty for plain Picard
  std::vector<Real> distances;
  std::vector<double> bounds;
  std::vector<std::size_t> applications;  // cumulative map applications per iterate
  Verdict verdict = Verdict::max_iters;
  Point candidate;
  bool bounds_truncated = false;
  std::optional<std::size_t> first_bound_violation;
  std::optional<Point> offending_point;  // certificate failure / left subset

  bool bounds_ok() const { return !first_bound_violation.has_value(); }
};

struct FixedPointResult {
  Point candidate;
  IterationTrace trace;
  Real residual;  // G(xi, T xi, T xi)
  std::size_t iterations = 0;

  bool converged() const { return trace.verdict == Verdict::converged; }
};

struct SolveOptions {
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIter;
};

struct PowerSolveOptions {
  Real lambda = Real::rational(1, 2);
  int n_cap = kDefaultPowerCap;
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIter;
  /// Horizon for the truncated orbit supremum r(x0); 0 means 4 * n_cap.
  std::size_t horizon = 0;
};

/// x_{k+1} = T x_k until G(x_k, x_{k+1}, x_{k+1}) <= tol; the candidate is the
/// last iterate. Non-convergence is reported through the verdict.
FixedPointResult picard(const SelfMap& t, const GMetric& g, const Point& x0, const SolveOptions& opts = {});

/// x_{k+1} = T^{n(x_k)} x_k with n(x_k) from find_power against `witnesses`.
/// Each step distance is checked against lambda^k r(x0) / (1 - lambda).
FixedPointResult power_picard(const SelfMap& t, const GMetric& g, const Point& x0,
                              std::span<const PointPair> witnesses, const PowerSolveOptions& opts = {});

/// The power iteration restricted to a subset B: every single application
/// of T must stay in B, and only witness pairs inside B are used.
FixedPointResult subset_power_picard(const SelfMap& t, const GMetric& g,
                                     const std::function<bool(const Point&)>& in_b, const Point& x0,
                                     std::span<const PointPair> witnesses,
                                     const PowerSolveOptions& opts = {});

// ---------------------------------------------------------------------------

struct IterateBoundEntry {
  std::size_t n = 0;
  Real distance;  // G(xi, T^n x0, T^n x0)
  Real bound;  // lambda^floor(n / n(xi)) * eta
  bool holds = true;
};

struct IterateBoundReport {
  Real eta;
  bool eta_from_empty_range = false;  // n(xi) = 1: eta := G(xi, x0, x0)
  std::vector<IterateBoundEntry> entries;
  std::size_t violations = 0;
};

class CorollaryViolation : public Error {
 public:
  CorollaryViolation(std::size_t n, IterateBoundReport report);
  std::size_t witness() const { return n_; }
  const IterateBoundReport& report() const { return report_; }

 private:
  std::size_t n_;
  IterateBoundReport report_;
};

/// Checks G(xi, T^n x0, T^n x0) <= lambda^r eta for n = 1..steps, with
/// n = r n(xi) + q and eta = max_{1<=m<n(xi)} G(xi, T^m x0, T^m x0).
/// Throws CorollaryViolation on the first failing n.
IterateBoundReport iterate_convergence_check(const SelfMap& t, const GMetric& g, const Point& xi,
                                             const Point& x0, const Real& lambda, int n_xi,
                                             std::size_t steps);

// ---------------------------------------------------------------------------

/// lambda * max{A, B, C, D, E} of the three-map contractive condition, with
/// E = 1/4 [G(Tx, y, z) + G(x, Ty, z) + G(x, y, Tz)].
Real eqfin_rhs(const GMetric& g, const Point& x, const Point& y, const Point& z, const Point& tx,
               const Point& ty, const Point& tz, const Real& lambda);

struct EqfinWitness {
  std::size_t step = 0;
  Point x, y, z;
  Point tx, ty, tz;
  Real lhs;
  Real rhs;
};

class ConditionViolation : public Error {
 public:
  explicit ConditionViolation(EqfinWitness w);
  const EqfinWitness& witness() const { return w_; }

 private:
  EqfinWitness w_;
};

class CommonFixityError : public Error {
 public:
  CommonFixityError(int map_index, Point candidate, Real residual);
  int map_index() const { return map_index_; }
  const Real& residual() const { return residual_; }

 private:
  int map_index_;
  Point candidate_;
  Real residual_;
};

using MapTriple = std::array<SelfMap, 3>;
using ScheduleTriple = std::array<PowerSchedule, 3>;

struct EqfinRatio {
  Real ratio;  // sup LHS / max{A..E}
  std::optional<Triple> witness;
};

/// Sup over sampled triples of G(T1^n x, T2^m y, T3^k z) / max{A, B, C, D, E}.
/// Triples where every term vanishes are skipped.
EqfinRatio sampled_eqfin_ratio(const MapTriple& maps, const ScheduleTriple& schedules, const GMetric& g,
                               std::span<const Triple> triples);

/// Round-robin iteration x_{3n+1} = T1^{n(.)} x_{3n}, x_{3n+2} = T2^{m(.)} x_{3n+1},
/// x_{3n+3} = T3^{k(.)} x_{3n+2}. Every consecutive triple is checked against
/// the contractive condition and against lambda^n r(x0). An empty schedule
/// falls back to the map's own schedule, then to 1.
FixedPointResult common_fixed_point(const MapTriple& maps, const ScheduleTriple& schedules,
                                    const GMetric& g, const Real& lambda, const Point& x0,
                                    const SolveOptions& opts = {});

// ---------------------------------------------------------------------------

struct FamilyMember {
  std::size_t index = 0;
  std::optional<Point> fixed_point;
  Real residual;
  Real distance;  // G(x*, x*_i, x*_i); meaningful when fixed_point is set
  std::optional<std::string> error;
};

struct FamilyReport {
  std::vector<FamilyMember> members;
  Point limit_fixed_point;
  Real limit_residual;
  bool strictly_decreasing = false;
  bool tail_below_tol = false;
  std::optional<std::size_t> first_below_tol;  // member index
  std::size_t failed_members = 0;

  bool ok() const { return failed_members == 0 && tail_below_tol; }
};

struct FamilyOptions {
  std::size_t first_index = 1;
  std::size_t count = 8;
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIter;
  /// One power schedule shared by every member and the limit map; empty = 1.
  PowerSchedule schedule;
  /// Triples for the per-member sampled condition check; empty skips it.
  std::vector<Triple> condition_samples;
};

/// Solves each member T_i and the pointwise limit T, then reports the
/// distances G(x*, x*_i, x*_i).
FamilyReport family_limit_fixed_points(const std::function<SelfMap(std::size_t)>& family,
                                       const SelfMap& limit, const GMetric& g, const Real& lambda,
                                       const Point& x0, const FamilyOptions& opts);

}  // namespace gmfp
