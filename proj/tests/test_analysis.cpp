#include <gtest/gtest.h>

#include <vector>

#include "gmfp/analysis.hpp"
#include "gmfp/example_maps.hpp"

using namespace gmfp;

namespace {

const GMetric g = max_abs_metric();

std::vector<Triple> nondegenerate_triples(const Sampler& s, std::size_t n, Rng& rng) {
  std::vector<Triple> out;
  while (out.size() < n) {
    Triple t = s.triple(rng);
    if (g(t.x, t.y, t.z).sign() > 0) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST(EstimateLambda, HalvingIsExactlyHalf) {
  Rng rng(1);
  const auto triples = nondegenerate_triples(Sampler::exact_mixed(), 200, rng);
  EXPECT_EQ(estimate_lambda(scale_map(Real::rational(1, 2)), g, 1, triples), Real::rational(1, 2));
}

TEST(EstimateLambda, IdentityIsOne) {
  Rng rng(2);
  const auto triples = nondegenerate_triples(Sampler::uniform_rational(), 100, rng);
  for (int p : {1, 3, 7}) EXPECT_EQ(estimate_lambda(identity_map(), g, p, triples), Real(1));
}

TEST(EstimateLambda, LinearPowersAreExact) {
  Rng rng(3);
  const auto triples = nondegenerate_triples(Sampler::exact_mixed(), 50, rng);
  for (const Real c : {Real::rational(1, 3), Real::rational(2, 3), Real::rational(9, 10)}) {
    for (unsigned p = 1; p <= 8; ++p) {
      EXPECT_EQ(estimate_lambda(scale_map(c), g, static_cast<int>(p), triples), pow(c, p));
    }
  }
}

TEST(EstimateLambda, CascadeLinearBranchIsSteep) {
  Rng rng(4);
  std::vector<Triple> triples;
  for (int n = 6; n <= 12; ++n) {
    const Rational b = examples::cascade_branch_point(n);
    const Rational hi = examples::shell_upper(n);
    for (int i = 0; i < 20; ++i) {
      const Rational u(static_cast<long>(uniform_index(rng, 1, 999)), 1000);
      const Rational v(static_cast<long>(uniform_index(rng, 1, 999)), 1000);
      if (u == v) continue;
      triples.push_back({Real(b + (hi - b) * u), Real(b + (hi - b) * v), Real(b + (hi - b) * v)});
    }
  }
  const Real est = estimate_lambda(examples::cascade_self_map(), g, 1, triples);
  EXPECT_GE(est, Real::rational(9, 10));
  // Oracle: direct slope of the branch on the deepest shell sampled.
  EXPECT_EQ(est, Real::rational(14, 15));
}

TEST(EstimateLambda, RejectsDegenerateTriple) {
  const std::vector<Triple> t{{Real(1), Real(1), Real(1)}};
  EXPECT_THROW(estimate_lambda(identity_map(), g, 1, t), InputError);
}

TEST(FindPower, Halving) {
  Rng rng(5);
  const auto w = sample_pairs(Sampler::exact_mixed(), 64, rng);
  const SelfMap half = scale_map(Real::rational(1, 2));
  for (const Point x : {Real(0), Real::rational(1, 3), Real(1)}) {
    EXPECT_EQ(find_power(half, g, x, Real::rational(1, 2), w), 1);
    EXPECT_EQ(find_power(half, g, x, Real::rational(1, 4), w), 2);
    EXPECT_EQ(find_power(half, g, x, Real::rational(1, 5), w), 3);
  }
}

TEST(FindPower, IdentityHasNoCertificate) {
  Rng rng(6);
  const auto w = sample_pairs(Sampler::uniform_rational(), 16, rng);
  try {
    find_power(identity_map(), g, Real::rational(1, 2), Real::rational(1, 2), w, 5);
    FAIL() << "expected CertificateNotFound";
  } catch (const CertificateNotFound& e) {
    EXPECT_EQ(e.best_ratio(), Real(1));
    EXPECT_EQ(e.n_cap(), 5);
  }
}

TEST(FindPower, CascadeWithinScheduleBound) {
  Rng rng(7);
  const SelfMap t = examples::cascade_self_map();
  for (int n = 1; n <= 8; ++n) {
    for (int i = 0; i < 10; ++i) {
      const Point x = examples::sample_shell_point(n, rng);
      const auto w = examples::cascade_witnesses(x, 32, rng);
      EXPECT_LE(find_power(t, g, x, Real::rational(1, 2), w), n + 3);
    }
  }
}

TEST(FindPower, WitnessedMinimality) {
  Rng rng(8);
  const SelfMap t = examples::cascade_self_map();
  const Real lambda = Real::rational(1, 2);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 0, 5));
    const Point x = examples::sample_shell_point(n, rng);
    const auto w = examples::cascade_witnesses(x, 24, rng);
    const int p = find_power(t, g, x, lambda, w);
    auto holds_at = [&](int k) {
      const Point tx = t.power(x, k);
      for (const auto& [y, z] : w) {
        const Real base = g(x, y, z);
        if (base.sign() == 0) continue;
        if (lambda * base < g(tx, t.power(y, k), t.power(z, k))) return false;
      }
      return true;
    };
    EXPECT_TRUE(holds_at(p));
    for (int k = 1; k < p; ++k) EXPECT_FALSE(holds_at(k)) << k;
  }
}

TEST(FindPower, MonotoneInWitnessSet) {
  Rng rng(9);
  const SelfMap t = examples::cascade_self_map();
  for (int i = 0; i < 30; ++i) {
    const Point x = examples::sample_shell_point(1 + static_cast<int>(uniform_index(rng, 0, 6)), rng);
    const auto small = examples::cascade_witnesses(x, 8, rng);
    auto big = small;
    const auto extra = examples::cascade_witnesses(x, 32, rng);
    big.insert(big.end(), extra.begin(), extra.end());
    EXPECT_LE(find_power(t, g, x, Real::rational(1, 2), small), find_power(t, g, x, Real::rational(1, 2), big));
  }
}

TEST(Certify, ScheduleRespectsInvariants) {
  Rng rng(10);
  const SelfMap t = examples::cascade_self_map();
  std::vector<Point> pts;
  for (int n = 1; n <= 5; ++n) pts.push_back(examples::sample_shell_point(n, rng));
  const auto w = sample_pairs(Sampler::dyadic_shells(16), 48, rng);
  const auto cert = certify(t, g, pts, w, Real::rational(1, 2), 16);
  ASSERT_EQ(cert.schedule.size(), pts.size());
  EXPECT_LE(cert.worst_ratio, Real::rational(1, 2));
  for (const auto& e : cert.schedule) {
    EXPECT_GE(e.power, 1);
    EXPECT_LE(e.power, 16);
    EXPECT_EQ(cert.power_at(e.x), e.power);
  }
}

TEST(OrbitBounds, HalvingClosedForm) {
  const auto b = orbit_bounds(scale_map(Real::rational(1, 2)), g, Real(1), 1, Real::rational(1, 2), 20);
  EXPECT_EQ(b.l_value, Real::rational(1, 2));
  EXPECT_EQ(b.bound, Real(1));
  EXPECT_EQ(b.r_truncated, Real(1) - pow(Real::rational(1, 2), 20));
}

TEST(OrbitBounds, FixedPointIsZero) {
  const auto b = orbit_bounds(examples::cascade_self_map(), g, Real(0), 1, Real::rational(1, 2), 10);
  EXPECT_EQ(b.l_value, Real(0));
  EXPECT_EQ(b.r_truncated, Real(0));
}

TEST(OrbitBounds, CascadeFromOne) {
  const SelfMap t = examples::cascade_self_map();
  const auto b = orbit_bounds(t, g, Real(1), 4, Real::rational(1, 2), 64);
  // Oracle: walk the orbit directly.
  Rational y(1), l(0), r(0);
  for (int i = 1; i <= 64; ++i) {
    y = examples::cascade(y);
    const Rational d = 1 - y;
    if (i <= 4 && d > l) l = d;
    if (d > r) r = d;
  }
  EXPECT_EQ(b.l_value, Real(l));
  EXPECT_EQ(b.r_truncated, Real(r));
  EXPECT_LE(b.r_truncated, Real(2) * b.l_value);
}

TEST(OrbitBounds, NondecreasingInHorizon) {
  Rng rng(11);
  const SelfMap t = examples::cascade_self_map();
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 0, 9));
    const Point x = examples::sample_shell_point(n, rng);
    const auto h = orbit_bounds(t, g, x, n + 3, Real::rational(1, 2), 24);
    const auto h1 = orbit_bounds(t, g, x, n + 3, Real::rational(1, 2), 25);
    EXPECT_LE(h.r_truncated, h1.r_truncated);
    EXPECT_LE(h1.r_truncated, h1.bound);
  }
}

TEST(OrbitBounds, ViolationIsReported) {
  // With n(x) = 1 the cascade orbit from 1 outruns l/(1 - lambda) for small lambda.
  EXPECT_THROW(orbit_bounds(examples::cascade_self_map(), g, Real(1), 1, Real::rational(1, 10), 32), LemmaViolation);
}

TEST(Lipschitz, HalvingAndCascade) {
  Rng rng(12);
  const auto pairs = sample_pairs(Sampler::exact_mixed(), 100, rng);
  std::vector<PointPair> distinct;
  for (const auto& p : pairs) if (p.first != p.second) distinct.push_back(p);
  EXPECT_EQ(lipschitz_ratio_probe(scale_map(Real::rational(1, 2)), abs_distance, distinct), Real::rational(1, 2));

  const SelfMap t = examples::cascade_self_map();
  Real sweep;
  for (int n = 1; n <= 12; ++n) {
    std::vector<PointPair> within;
    const Rational b = examples::cascade_branch_point(n);
    const Rational hi = examples::shell_upper(n);
    for (int i = 0; i < 50; ++i) {
      const Point x = examples::sample_shell_point(n, rng);
      const Point y = examples::sample_shell_point(n, rng);
      if (x != y) within.emplace_back(x, y);
    }
    within.emplace_back(Real(b), Real(hi));
    const Real r = lipschitz_ratio_probe(t, abs_distance, within);
    EXPECT_LE(r, Real(examples::cascade_lipschitz_bound(n)));
    // The pair spanning the linear branch has slope (n+2)/(n+3).
    EXPECT_GE(r, Real(Rational(n + 2, n + 3)));
    sweep = max(sweep, r);
  }
  EXPECT_GT(sweep, Real::rational(9, 10));
  EXPECT_THROW(lipschitz_ratio_probe(t, abs_distance, std::vector<PointPair>{{Real(1), Real(1)}}), InputError);
}

TEST(Continuity, CascadeAndIdentity) {
  std::vector<Point> seq;
  for (int n = 0; n < 40; ++n) seq.push_back(pow(Real::rational(1, 2), static_cast<unsigned>(n)));
  EXPECT_TRUE(sequential_continuity_probe(examples::cascade_self_map(), g, seq, Real(0), 1e-6, 10));
  EXPECT_TRUE(sequential_continuity_probe(identity_map(), g, seq, Real(0), 1e-6, 10));
}

TEST(Continuity, StepMapFails) {
  std::vector<Point> seq;
  for (int n = 1; n <= 4000; ++n) {
    seq.push_back(Real::rational(1, 2) + Real::rational(n % 2 == 0 ? 1 : -1, n));
  }
  EXPECT_FALSE(sequential_continuity_probe(examples::step_self_map(), g, seq, Real::rational(1, 2), 1e-3, 100));
}

TEST(Continuity, RejectsNonConvergent) {
  std::vector<Point> seq;
  for (int n = 0; n < 20; ++n) seq.push_back(Real(n % 2));
  EXPECT_THROW(sequential_continuity_probe(identity_map(), g, seq, Real(0), 0.1, 5), InputError);
}
