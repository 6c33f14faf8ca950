#include "gmfp/analysis.hpp"

#include <string>

namespace gmfp {

namespace {

std::string describe(const Triple& t) {
  return "(" + t.x.to_string() + ", " + t.y.to_string() + ", " + t.z.to_string() + ")";
}

void require_lambda(const Real& lambda, const char* op) {
  if (!(Real(0) < lambda && lambda < Real(1))) {
    throw InputError(std::string(op) + ": lambda must lie in (0, 1), got " + lambda.to_string());
  }
}

}  // namespace

CertificateNotFound::CertificateNotFound(Point x, int n_cap, Real best_ratio, int best_power)
    : Error("no power n <= " + std::to_string(n_cap) + " contracts at x = " + x.to_string() +
            " (best ratio " + best_ratio.to_string() + " at n = " + std::to_string(best_power) + ")"),
      x_(std::move(x)),
      n_cap_(n_cap),
      best_ratio_(std::move(best_ratio)),
      best_power_(best_power) {}

LemmaViolation::LemmaViolation(OrbitBounds bounds)
    : Error("orbit supremum " + bounds.r_truncated.to_string() + " exceeds l(x)/(1-lambda) = " +
            bounds.bound.to_string()),
      bounds_(std::move(bounds)) {}

std::optional<int> ContractionCertificate::power_at(const Point& x) const {
  for (const auto& e : schedule) {
    if (e.x == x) return e.power;
  }
  return std::nullopt;
}

Real estimate_lambda(const SelfMap& t, const GMetric& g, int power, std::span<const Triple> triples) {
  if (power < 1) throw InputError("estimate_lambda: power must be positive");
  if (triples.empty()) throw InputError("estimate_lambda: empty triple set");
  Real sup;
  for (const auto& tr : triples) {
    const Real den = g(tr.x, tr.y, tr.z);
    if (den.sign() == 0) {
      throw InputError("estimate_lambda: G vanishes on triple " + describe(tr));
    }
    const Real num = g(t.power(tr.x, power), t.power(tr.y, power), t.power(tr.z, power));
    sup = max(sup, num / den);
  }
  return sup;
}

Real power_ratio(const SelfMap& t, const GMetric& g, const Point& x, std::span<const PointPair> witnesses,
                 int power) {
  const Point tx = t.power(x, power);
  Real worst;
  for (const auto& [y, z] : witnesses) {
    const Real den = g(x, y, z);
    if (den.sign() == 0) continue;
    worst = max(worst, g(tx, t.power(y, power), t.power(z, power)) / den);
  }
  return worst;
}

int find_power(const SelfMap& t, const GMetric& g, const Point& x, const Real& lambda,
               std::span<const PointPair> witnesses, int n_cap) {
  require_lambda(lambda, "find_power");
  if (witnesses.empty()) throw InputError("find_power: empty witness set");
  if (n_cap < 1) throw InputError("find_power: n_cap must be positive");

  struct Witness {
    Point ty;
    Point tz;
    Real base;  // G(x, y, z)
    Real limit;  // lambda G(x, y, z)
  };
  std::vector<Witness> active;
  active.reserve(witnesses.size());
  for (const auto& [y, z] : witnesses) {
    Real base = g(x, y, z);
    if (base.sign() == 0) continue;
    Real limit = lambda * base;
    active.push_back({y, z, std::move(base), std::move(limit)});
  }
  if (active.empty()) return 1;  // every witness is degenerate: vacuous at n = 1

  Point tx = x;
  Real best_ratio;
  int best_power = 0;
  for (int n = 1; n <= n_cap; ++n) {
    tx = t(tx);
    bool holds = true;
    Real worst;
    for (auto& w : active) {
      w.ty = t(w.ty);
      w.tz = t(w.tz);
      const Real image = g(tx, w.ty, w.tz);
      if (!less_equal_with_slack(image, w.limit, g.tol_eq)) holds = false;
      worst = max(worst, image / w.base);
    }
    if (holds) return n;
    if (best_power == 0 || worst < best_ratio) {
      best_ratio = worst;
      best_power = n;
    }
  }
  throw CertificateNotFound(x, n_cap, best_ratio, best_power);
}

ContractionCertificate certify(const SelfMap& t, const GMetric& g, std::span<const Point> points,
                               std::span<const PointPair> witnesses, const Real& lambda, int n_cap) {
  ContractionCertificate cert;
  cert.lambda = lambda;
  cert.n_cap = n_cap;
  for (const auto& x : points) {
    const int n = find_power(t, g, x, lambda, witnesses, n_cap);
    Real ratio = power_ratio(t, g, x, witnesses, n);
    cert.worst_ratio = max(cert.worst_ratio, ratio);
    cert.schedule.push_back({x, n, std::move(ratio)});
    for (const auto& [y, z] : witnesses) cert.witness_samples.push_back({x, y, z});
  }
  return cert;
}

std::vector<Real> orbit_profile(const SelfMap& t, const GMetric& g, const Point& x, std::size_t horizon) {
  std::vector<Real> out;
  out.reserve(horizon);
  Point y = x;
  for (std::size_t n = 1; n <= horizon; ++n) {
    y = t(y);
    out.push_back(g(x, y, y));
  }
  return out;
}

OrbitBounds orbit_bounds(const SelfMap& t, const GMetric& g, const Point& x, int n_x,
                         const Real& lambda, std::size_t horizon) {
  require_lambda(lambda, "orbit_bounds");
  if (n_x < 1) throw InputError("orbit_bounds: n(x) must be positive");
  if (horizon < static_cast<std::size_t>(n_x)) throw InputError("orbit_bounds: horizon must be >= n(x)");

  const auto profile = orbit_profile(t, g, x, horizon);
  OrbitBounds b;
  b.horizon = horizon;
  b.n_x = n_x;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i < static_cast<std::size_t>(n_x)) b.l_value = max(b.l_value, profile[i]);
    b.r_truncated = max(b.r_truncated, profile[i]);
  }
  b.bound = b.l_value / (Real(1) - lambda);
  if (!less_equal_with_slack(b.r_truncated, b.bound, g.tol_eq)) throw LemmaViolation(b);
  return b;
}

Real lipschitz_ratio_probe(const SelfMap& t, const PairDistance& d, std::span<const PointPair> pairs) {
  if (pairs.empty()) throw InputError("lipschitz_ratio_probe: empty pair set");
  Real sup;
  for (const auto& [x, y] : pairs) {
    const Real den = d(x, y);
    if (den.sign() == 0) {
      throw InputError("lipschitz_ratio_probe: zero distance at (" + x.to_string() + ", " +
                       y.to_string() + ")");
    }
    sup = max(sup, d(t(x), t(y)) / den);
  }
  return sup;
}

bool sequential_continuity_probe(const SelfMap& t, const GMetric& g, std::span<const Point> seq,
                                 const Point& limit, double tol, std::size_t tail_len) {
  const auto conv = check_convergence_equivalence(g, seq, limit, tail_len, tol);
  if (!conv.all_below) {
    throw InputError("sequential_continuity_probe: sequence does not G-converge to " +
                     limit.to_string() + " at the given tolerance");
  }
  const Real bound = Real::exact_from_double(tol);
  const Point t_limit = t(limit);
  for (std::size_t i = conv.tail_start; i < seq.size(); ++i) {
    const Point tx = t(seq[i]);
    if (!(g(t_limit, tx, tx) < bound)) return false;
  }
  return true;
}

}  // namespace gmfp
