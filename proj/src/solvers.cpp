#include "gmfp/solvers.hpp"

#include <cmath>

namespace gmfp {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::max_iters: return "max-iters";
    case Verdict::certificate_failure: return "certificate-failure";
    case Verdict::left_subset: return "left-subset";
  }
  return "unknown";
}

namespace {

void require_lambda(const Real& lambda, const char* op) {
  if (!(Real(0) < lambda && lambda < Real(1))) {
    throw InputError(std::string(op) + ": lambda must lie in (0, 1), got " + lambda.to_string());
  }
}

void require_max_iter(std::size_t max_iter, const char* op) {
  if (max_iter < 1) throw InputError(std::string(op) + ": max_iter must be >= 1");
}

Real residual_of(const SelfMap& t, const GMetric& g, const Point& x) {
  const Point tx = t(x);
  return g(x, tx, tx);
}

bool within(const Real& v, double tol) { return less_equal_with_slack(v, Real(0), tol); }

// Shared loop of power_picard and subset_power_picard.
FixedPointResult power_iteration(const char* scheme, const SelfMap& t, const GMetric& g, const Point& x0,
                                 std::span<const PointPair> witnesses, const PowerSolveOptions& opts,
                                 const std::function<bool(const Point&)>* in_b) {
  require_lambda(opts.lambda, scheme);
  require_max_iter(opts.max_iter, scheme);
  if (in_b && !(*in_b)(x0)) throw InputError(std::string(scheme) + ": x0 is not in B");

  std::vector<PointPair> usable;
  if (in_b) {
    for (const auto& w : witnesses) {
      if ((*in_b)(w.first) && (*in_b)(w.second)) usable.push_back(w);
    }
    if (usable.empty()) usable.emplace_back(x0, x0);
  } else {
    usable.assign(witnesses.begin(), witnesses.end());
  }
  if (usable.empty()) throw InputError(std::string(scheme) + ": empty witness set");

  FixedPointResult res;
  IterationTrace& tr = res.trace;
  tr.scheme = scheme;
  tr.bounds_truncated = true;
  tr.iterates.push_back(x0);
  tr.applications.push_back(0);

  const std::size_t horizon = opts.horizon > 0 ? opts.horizon : default_horizon(opts.n_cap);
  Real r0;
  for (const Real& v : orbit_profile(t, g, x0, horizon)) r0 = max(r0, v);
  const double lambda = opts.lambda.to_double();
  const double r_over = r0.to_double() / (1.0 - lambda);

  Point x = x0;
  std::size_t apps = 0;
  auto finish = [&](Verdict v, Real residual) {
    tr.verdict = v;
    tr.candidate = x;
    res.candidate = x;
    res.residual = std::move(residual);
    res.iterations = tr.iterates.size() - 1;
    return res;
  };

  for (std::size_t k = 0; k < opts.max_iter; ++k) {
    Real fixed_residual = residual_of(t, g, x);
    if (fixed_residual.sign() == 0) return finish(Verdict::converged, std::move(fixed_residual));

    int n = 0;
    try {
      // Orbit pairs (T^j x, T^j x) are the witnesses the a priori estimate
      // chains through; they join the sampled set.
      std::vector<PointPair> w = usable;
      Point orbit = x;
      for (int j = 1; j <= opts.n_cap; ++j) {
        orbit = t(orbit);
        if (in_b && !(*in_b)(orbit)) break;
        w.emplace_back(orbit, orbit);
      }
      n = find_power(t, g, x, opts.lambda, w, opts.n_cap);
    } catch (const CertificateNotFound&) {
      tr.offending_point = x;
      return finish(Verdict::certificate_failure, std::move(fixed_residual));
    }

    Point next = x;
    for (int i = 0; i < n; ++i) {
      next = t(next);
      ++apps;
      if (in_b && !(*in_b)(next)) {
        tr.offending_point = next;
        return finish(Verdict::left_subset, std::move(fixed_residual));
      }
    }

    Real d = g(x, next, next);
    const double bound = std::pow(lambda, static_cast<double>(k)) * r_over;
    if (!tr.first_bound_violation && !less_equal_with_slack(d, Real::exact_from_double(bound), kBoundSlack)) {
      tr.first_bound_violation = k;
    }
    const bool small = within(d, opts.tol);
    tr.powers.push_back(n);
    tr.distances.push_back(std::move(d));
    tr.bounds.push_back(bound);
    tr.iterates.push_back(next);
    tr.applications.push_back(apps);
    x = std::move(next);

    if (small) {
      Real residual = residual_of(t, g, x);
      if (within(residual, opts.tol)) return finish(Verdict::converged, std::move(residual));
    }
  }
  return finish(Verdict::max_iters, residual_of(t, g, x));
}

}  // namespace

FixedPointResult picard(const SelfMap& t, const GMetric& g, const Point& x0, const SolveOptions& opts) {
  require_max_iter(opts.max_iter, "picard");
  FixedPointResult res;
  IterationTrace& tr = res.trace;
  tr.scheme = "picard";
  tr.iterates.push_back(x0);
  tr.applications.push_back(0);

  Point x = x0;
  Point tx = t(x);
  auto finish = [&](Verdict v, Real residual) {
    tr.verdict = v;
    tr.candidate = x;
    res.candidate = x;
    res.residual = std::move(residual);
    res.iterations = tr.iterates.size() - 1;
    return res;
  };

  for (std::size_t k = 0; k < opts.max_iter; ++k) {
    Real d = g(x, tx, tx);
    if (d.sign() == 0) return finish(Verdict::converged, std::move(d));
    const bool small = within(d, opts.tol);
    tr.distances.push_back(std::move(d));
    tr.iterates.push_back(tx);
    tr.applications.push_back(k + 1);
    Point ttx = t(tx);
    x = std::move(tx);
    tx = std::move(ttx);
    if (small) {
      Real residual = g(x, tx, tx);
      if (within(residual, opts.tol)) return finish(Verdict::converged, std::move(residual));
    }
  }
  return finish(Verdict::max_iters, g(x, tx, tx));
}

FixedPointResult power_picard(const SelfMap& t, const GMetric& g, const Point& x0,
                              std::span<const PointPair> witnesses, const PowerSolveOptions& opts) {
  return power_iteration("power-picard", t, g, x0, witnesses, opts, nullptr);
}

FixedPointResult subset_power_picard(const SelfMap& t, const GMetric& g,
                                     const std::function<bool(const Point&)>& in_b, const Point& x0,
                                     std::span<const PointPair> witnesses, const PowerSolveOptions& opts) {
  return power_iteration("subset", t, g, x0, witnesses, opts, &in_b);
}

// ---------------------------------------------------------------------------

CorollaryViolation::CorollaryViolation(std::size_t n, IterateBoundReport report)
    : Error("iterate bound fails at n = " + std::to_string(n)), n_(n), report_(std::move(report)) {}

IterateBoundReport iterate_convergence_check(const SelfMap& t, const GMetric& g, const Point& xi,
                                             const Point& x0, const Real& lambda, int n_xi,
                                             std::size_t steps) {
  require_lambda(lambda, "iterate_convergence_check");
  if (n_xi < 1) throw InputError("iterate_convergence_check: n(xi) must be positive");
  if (!within(residual_of(t, g, xi), kDefaultTolerance)) {
    throw InputError("iterate_convergence_check: xi = " + xi.to_string() + " is not a fixed point");
  }

  IterateBoundReport rep;
  const std::size_t period = static_cast<std::size_t>(n_xi);
  const std::size_t needed = std::max(steps, period);
  std::vector<Real> dist;  // dist[m] = G(xi, T^m x0, T^m x0), m = 0..needed
  dist.reserve(needed + 1);
  Point y = x0;
  dist.push_back(g(xi, y, y));
  for (std::size_t m = 1; m <= needed; ++m) {
    y = t(y);
    dist.push_back(g(xi, y, y));
  }

  if (period == 1) {
    rep.eta = dist[0];
    rep.eta_from_empty_range = true;
  } else {
    for (std::size_t m = 1; m < period; ++m) rep.eta = max(rep.eta, dist[m]);
  }

  std::optional<std::size_t> first_bad;
  for (std::size_t n = 1; n <= steps; ++n) {
    const auto r = static_cast<unsigned>(n / period);
    IterateBoundEntry e;
    e.n = n;
    e.distance = dist[n];
    e.bound = pow(lambda, r) * rep.eta;
    e.holds = less_equal_with_slack(e.distance, e.bound, g.tol_eq);
    if (!e.holds) {
      ++rep.violations;
      if (!first_bad) first_bad = n;
    }
    rep.entries.push_back(std::move(e));
  }
  if (first_bad) throw CorollaryViolation(*first_bad, std::move(rep));
  return rep;
}

// ---------------------------------------------------------------------------

Real eqfin_rhs(const GMetric& g, const Point& x, const Point& y, const Point& z, const Point& tx,
               const Point& ty, const Point& tz, const Real& lambda) {
  const Real a = g(x, y, z);
  const Real b = g(x, tx, tx);
  const Real c = g(y, ty, ty);
  const Real d = g(z, tz, tz);
  const Real e = Real::rational(1, 4) * (g(tx, y, z) + g(x, ty, z) + g(x, y, tz));
  return lambda * max(max(max(a, b), max(c, d)), e);
}

ConditionViolation::ConditionViolation(EqfinWitness w)
    : Error("contractive condition fails at step " + std::to_string(w.step) + ": " + w.lhs.to_string() +
            " > " + w.rhs.to_string()),
      w_(std::move(w)) {}

CommonFixityError::CommonFixityError(int map_index, Point candidate, Real residual)
    : Error("candidate " + candidate.to_string() + " is not fixed by T" + std::to_string(map_index + 1) +
            " (residual " + residual.to_string() + ")"),
      map_index_(map_index),
      candidate_(std::move(candidate)),
      residual_(std::move(residual)) {}

namespace {

ScheduleTriple resolve_schedules(const MapTriple& maps, const ScheduleTriple& schedules) {
  ScheduleTriple out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (schedules[i]) {
      out[i] = schedules[i];
    } else if (maps[i].has_schedule()) {
      out[i] = maps[i].schedule();
    } else {
      out[i] = [](const Point&) { return 1; };
    }
  }
  return out;
}

int checked_power(const PowerSchedule& s, const Point& x) {
  const int n = s(x);
  if (n < 1) throw InputError("power schedule returned " + std::to_string(n) + " at " + x.to_string());
  return n;
}

}  // namespace

EqfinRatio sampled_eqfin_ratio(const MapTriple& maps, const ScheduleTriple& schedules, const GMetric& g,
                               std::span<const Triple> triples) {
  const ScheduleTriple s = resolve_schedules(maps, schedules);
  EqfinRatio out;
  for (const auto& tr : triples) {
    const Point tx = maps[0].power(tr.x, checked_power(s[0], tr.x));
    const Point ty = maps[1].power(tr.y, checked_power(s[1], tr.y));
    const Point tz = maps[2].power(tr.z, checked_power(s[2], tr.z));
    const Real m = eqfin_rhs(g, tr.x, tr.y, tr.z, tx, ty, tz, Real(1));
    if (m.sign() == 0) continue;
    const Real ratio = g(tx, ty, tz) / m;
    if (!out.witness || out.ratio < ratio) {
      out.ratio = ratio;
      out.witness = tr;
    }
  }
  return out;
}

FixedPointResult common_fixed_point(const MapTriple& maps, const ScheduleTriple& schedules,
                                    const GMetric& g, const Real& lambda, const Point& x0,
                                    const SolveOptions& opts) {
  require_lambda(lambda, "common_fixed_point");
  require_max_iter(opts.max_iter, "common_fixed_point");
  const ScheduleTriple s = resolve_schedules(maps, schedules);

  FixedPointResult res;
  IterationTrace& tr = res.trace;
  tr.scheme = "common";
  tr.iterates.push_back(x0);
  tr.applications.push_back(0);
  std::size_t apps = 0;

  auto extend = [&] {
    const std::size_t j = tr.iterates.size() - 1;
    const std::size_t i = j % 3;
    const Point& xj = tr.iterates.back();
    const int n = checked_power(s[i], xj);
    Point next = maps[i].power(xj, n);
    apps += static_cast<std::size_t>(n);
    tr.powers.push_back(n);
    tr.iterates.push_back(std::move(next));
    tr.applications.push_back(apps);
  };
  auto triple_distance = [&](std::size_t j) {
    return g(tr.iterates[j], tr.iterates[j + 1], tr.iterates[j + 2]);
  };

  while (tr.iterates.size() < 5) extend();
  // r(x0) = max of the first three consecutive-triple distances.
  const Real r0 = max(max(triple_distance(0), triple_distance(1)), triple_distance(2));
  const double lam = lambda.to_double();
  const double r0d = r0.to_double();

  auto finish = [&](Verdict v) {
    const Point c = tr.iterates.back();
    Real worst;
    for (int i = 0; i < 3; ++i) {
      Real r = residual_of(maps[static_cast<std::size_t>(i)], g, c);
      if (v == Verdict::converged && !within(r, opts.tol)) throw CommonFixityError(i, c, r);
      worst = max(worst, r);
    }
    tr.verdict = v;
    tr.candidate = c;
    res.candidate = c;
    res.residual = std::move(worst);
    res.iterations = tr.iterates.size() - 1;
    return res;
  };

  for (std::size_t j = 0; j < opts.max_iter; ++j) {
    while (tr.iterates.size() < j + 4) extend();
    const Point& xa = tr.iterates[j];
    const Point& xb = tr.iterates[j + 1];
    const Point& xc = tr.iterates[j + 2];
    const Point& xd = tr.iterates[j + 3];

    // The tuple (x_j, x_{j+1}, x_{j+2}) with images (x_{j+1}, x_{j+2}, x_{j+3}).
    // The condition is symmetric under permuting (point, image) pairs together,
    // so the map order of the slots does not matter.
    Real lhs = g(xb, xc, xd);
    Real rhs = eqfin_rhs(g, xa, xb, xc, xb, xc, xd, lambda);
    if (!less_equal_with_slack(lhs, rhs, g.tol_eq)) {
      throw ConditionViolation({j, xa, xb, xc, xb, xc, xd, std::move(lhs), std::move(rhs)});
    }

    Real d = triple_distance(j);
    const double bound = std::pow(lam, static_cast<double>(j)) * r0d;
    if (!tr.first_bound_violation && !less_equal_with_slack(d, Real::exact_from_double(bound), kBoundSlack)) {
      tr.first_bound_violation = j;
    }
    const bool small = within(d, opts.tol);
    tr.distances.push_back(std::move(d));
    tr.bounds.push_back(bound);

    if (small) return finish(Verdict::converged);
    // A full round returned to its start: fixed point of the composite step.
    if (j % 3 == 0 && xd == xa) return finish(Verdict::converged);
  }
  return finish(Verdict::max_iters);
}

// ---------------------------------------------------------------------------

FamilyReport family_limit_fixed_points(const std::function<SelfMap(std::size_t)>& family,
                                       const SelfMap& limit, const GMetric& g, const Real& lambda,
                                       const Point& x0, const FamilyOptions& opts) {
  require_lambda(lambda, "family_limit_fixed_points");
  if (opts.count < 1) throw InputError("family_limit_fixed_points: need at least one member");
  const ScheduleTriple shared{opts.schedule, opts.schedule, opts.schedule};
  const SolveOptions solve{opts.tol, opts.max_iter};

  FamilyReport rep;
  const auto limit_result = common_fixed_point({limit, limit, limit}, shared, g, lambda, x0, solve);
  rep.limit_fixed_point = limit_result.candidate;
  rep.limit_residual = limit_result.residual;

  for (std::size_t k = 0; k < opts.count; ++k) {
    FamilyMember m;
    m.index = opts.first_index + k;
    const SelfMap ti = family(m.index);
    const MapTriple maps{ti, ti, ti};
    try {
      if (!opts.condition_samples.empty()) {
        const auto cond = sampled_eqfin_ratio(maps, shared, g, opts.condition_samples);
        if (lambda < cond.ratio) {
          throw InputError("sampled condition ratio " + cond.ratio.to_string() + " exceeds lambda");
        }
      }
      const auto r = common_fixed_point(maps, shared, g, lambda, x0, solve);
      if (!r.converged()) throw Error("did not converge (" + to_string(r.trace.verdict) + ")");
      m.fixed_point = r.candidate;
      m.residual = r.residual;
      m.distance = g(rep.limit_fixed_point, r.candidate, r.candidate);
    } catch (const Error& e) {
      m.error = e.what();
      ++rep.failed_members;
    }
    rep.members.push_back(std::move(m));
  }

  rep.strictly_decreasing = rep.failed_members == 0;
  const Real t = Real::exact_from_double(opts.tol);
  for (std::size_t k = 0; k < rep.members.size(); ++k) {
    const auto& m = rep.members[k];
    if (!m.fixed_point) continue;
    if (k > 0 && rep.members[k - 1].fixed_point && !(m.distance < rep.members[k - 1].distance)) {
      rep.strictly_decreasing = false;
    }
    if (!rep.first_below_tol && m.distance < t) rep.first_below_tol = m.index;
  }
  const auto& last = rep.members.back();
  rep.tail_below_tol = last.fixed_point.has_value() && last.distance < t;
  return rep;
}

}  // namespace gmfp
