#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmfp/errors.hpp"
#include "gmfp/gmetric.hpp"
#include "gmfp/self_map.hpp"

namespace gmfp {

inline constexpr int kDefaultPowerCap = 64;

/// Truncation horizon for orbit suprema: 4 * n_cap.
constexpr std::size_t default_horizon(int n_cap) { return 4 * static_cast<std::size_t>(n_cap); }

/// No power n <= n_cap made T^n contract the witnesses at x.
class CertificateNotFound : public Error {
 public:
  CertificateNotFound(Point x, int n_cap, Real best_ratio, int best_power);
  const Point& point() const { return x_; }
  const Real& best_ratio() const { return best_ratio_; }
  int best_power() const { return best_power_; }
  int n_cap() const { return n_cap_; }

 private:
  Point x_;
  int n_cap_;
  Real best_ratio_;
  int best_power_;
};

struct OrbitBounds {
  Real l_value;  // max_{1<=i<=n(x)} G(x, T^i x, T^i x)
  Real r_truncated;  // max_{1<=n<=horizon} G(x, T^n x, T^n x)
  std::size_t horizon = 0;
  int n_x = 1;
  Real bound;  // l(x) / (1 - lambda)
};

/// The orbit supremum exceeded l(x)/(1 - lambda): the power certificate does
/// not actually hold along this orbit.
class LemmaViolation : public Error {
 public:
  explicit LemmaViolation(OrbitBounds bounds);
  const OrbitBounds& bounds() const { return bounds_; }

 private:
  OrbitBounds bounds_;
};

struct ScheduleEntry {
  Point x;
  int power = 1;
  Real worst_ratio;  // over the witnesses at this x
};

/// A sampled certificate for G(T^n(x) x, T^n(x) y, T^n(x) z) <= lambda G(x,y,z).
/// It attests the inequality on the recorded witnesses only.
struct ContractionCertificate {
  Real lambda;
  int n_cap = kDefaultPowerCap;
  std::vector<ScheduleEntry> schedule;
  std::vector<Triple> witness_samples;
  Real worst_ratio;

  std::optional<int> power_at(const Point& x) const;
};

/// Sup over the sample of G(T^p x, T^p y, T^p z) / G(x, y, z).
/// Throws InputError on a triple with G(x, y, z) = 0.
Real estimate_lambda(const SelfMap& t, const GMetric& g, int power, std::span<const Triple> triples);

/// Worst ratio G(T^n x, T^n y, T^n z) / G(x, y, z) over witnesses with a
/// nonzero denominator; 0 when every witness is degenerate.
Real power_ratio(const SelfMap& t, const GMetric& g, const Point& x, std::span<const PointPair> witnesses,
                 int power);

/// Least n <= n_cap with G(T^n x, T^n y, T^n z) <= lambda G(x, y, z) for all
/// witnesses. Witnesses with G(x, y, z) = 0 are skipped.
int find_power(const SelfMap& t, const GMetric& g, const Point& x, const Real& lambda,
               std::span<const PointPair> witnesses, int n_cap = kDefaultPowerCap);

/// find_power at every point of `points`, each against the same witnesses.
ContractionCertificate certify(const SelfMap& t, const GMetric& g, std::span<const Point> points,
                               std::span<const PointPair> witnesses, const Real& lambda,
                               int n_cap = kDefaultPowerCap);

/// G(x, T^n x, T^n x) for n = 1..horizon.
std::vector<Real> orbit_profile(const SelfMap& t, const GMetric& g, const Point& x, std::size_t horizon);

/// l(x), the truncated orbit supremum and the bound l(x)/(1 - lambda).
/// Throws LemmaViolation when r_truncated exceeds the bound.
OrbitBounds orbit_bounds(const SelfMap& t, const GMetric& g, const Point& x, int n_x,
                         const Real& lambda, std::size_t horizon);

/// Sup d(Tx, Ty) / d(x, y) over the pairs; InputError on a zero-distance pair.
Real lipschitz_ratio_probe(const SelfMap& t, const PairDistance& d, std::span<const PointPair> pairs);

/// True iff G(T x*, T x_n, T x_n) < tol on the last tail_len images.
/// The sequence must itself G-converge to x* at tol (InputError otherwise).
bool sequential_continuity_probe(const SelfMap& t, const GMetric& g, std::span<const Point> seq,
                                 const Point& limit, double tol, std::size_t tail_len);

}  // namespace gmfp
