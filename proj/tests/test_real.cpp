#include <gtest/gtest.h>

#include <random>

#include "gmfp/errors.hpp"
#include "gmfp/random.hpp"
#include "gmfp/real.hpp"

using gmfp::Rational;
using gmfp::Real;
using gmfp::Surd;

TEST(Real, ParsesRationalsAndSurds) {
  EXPECT_EQ(Real::parse("3/4"), Real::rational(3, 4));
  EXPECT_EQ(Real::parse("-7"), Real(-7));
  EXPECT_EQ(Real::parse("sqrt2/2"), Real::irrational(Rational(0), Rational(1, 2)));
  EXPECT_EQ(Real::parse("1-1/2*sqrt2"), Real::irrational(Rational(1), Rational(-1, 2)));
  EXPECT_EQ(Real::parse("0+1/2*sqrt2").kind(), gmfp::PointKind::irrational);
  EXPECT_EQ(Real::parse("0.25").kind(), gmfp::PointKind::floating);
  EXPECT_EQ(Real::parse("1e-3").kind(), gmfp::PointKind::floating);
}

TEST(Real, RejectsGarbage) {
  EXPECT_THROW(Real::parse(""), gmfp::Error);
  EXPECT_THROW(Real::parse("1/0"), gmfp::Error);
  EXPECT_THROW(Real::parse("abc"), gmfp::Error);
  EXPECT_THROW(Real::irrational(Rational(1), Rational(0)), gmfp::Error);
  EXPECT_THROW(Real::floating(std::numeric_limits<double>::infinity()), gmfp::Error);
}

TEST(Real, FormatsCanonically) {
  EXPECT_EQ(Real::rational(6, 8).to_string(), "3/4");
  EXPECT_EQ(Real(5).to_string(), "5");
  EXPECT_EQ(Real::irrational(Rational(1), Rational(-1, 2)).to_string(), "1-1/2*sqrt2");
  EXPECT_EQ(Real::floating(2.0).to_string(), "2.0");
  EXPECT_EQ(Real::floating(0.1).to_string(), "0.1");
}

TEST(Real, SignOfSurdIsExact) {
  // 99/70 is a convergent of sqrt2, just above it.
  EXPECT_EQ(Surd(Rational(99, 70), Rational(-1)).sign(), 1);
  EXPECT_EQ(Surd(Rational(-99, 70), Rational(1)).sign(), -1);
  EXPECT_EQ(Surd(Rational(140, 99), Rational(-1)).sign(), -1);
  EXPECT_EQ(Surd(Rational(0), Rational(0)).sign(), 0);
}

TEST(Real, SqrtTwoSquaresToTwo) {
  const Real s = Real::irrational(Rational(0), Rational(1));
  EXPECT_EQ(s * s, Real(2));
  EXPECT_TRUE((s * s).is_rational());
  EXPECT_EQ(Real(1) / (Real(1) + s), s - Real(1));
}

TEST(Real, FloatContaminates) {
  const Real x = Real::rational(1, 2) + Real::floating(0.25);
  EXPECT_FALSE(x.is_exact());
  EXPECT_DOUBLE_EQ(x.to_double(), 0.75);
}

TEST(Real, MixedComparisonIsExact) {
  // 0.1 as a double is slightly above 1/10.
  EXPECT_LT(Real::rational(1, 10), Real::floating(0.1));
  EXPECT_EQ(Real::floating(0.5), Real::rational(1, 2));
}

TEST(Real, RoundTripProperty) {
  gmfp::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const long p = static_cast<long>(gmfp::uniform_index(rng, 0, 2000)) - 1000;
    const long q = static_cast<long>(gmfp::uniform_index(rng, 1, 500));
    const long r = static_cast<long>(gmfp::uniform_index(rng, 0, 2000)) - 1000;
    const Real a = Real::rational(p, q);
    EXPECT_EQ(Real::parse(a.to_string()), a);
    if (r != 0) {
      const Real s = Real::irrational(Rational(p, q), Rational(r, q + 1));
      EXPECT_EQ(Real::parse(s.to_string()), s);
    }
    const Real f = Real::floating(gmfp::unit_double(rng) * 10 - 5);
    EXPECT_EQ(Real::parse(f.to_string()).to_double(), f.to_double());
  }
}

TEST(Real, PowMatchesRepeatedProduct) {
  const Real c = Real::rational(2, 3);
  Real acc = 1;
  for (unsigned k = 0; k <= 12; ++k) {
    EXPECT_EQ(gmfp::pow(c, k), acc);
    acc *= c;
  }
}

TEST(Real, AsRationalRejectsOthers) {
  EXPECT_THROW(Real::floating(0.5).as_rational(), gmfp::DomainError);
  EXPECT_THROW(Real::parse("sqrt2").as_rational(), gmfp::DomainError);
  EXPECT_EQ(Real::rational(1, 3).as_rational(), Rational(1, 3));
}
