#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace gmfp {

using Rational = mpq_class;

/// Exact element a + b*sqrt(2) of the field Q(sqrt2).
///
/// Closed under + - * / and under x -> 1 - x, so the worked example maps
/// and the max-abs G-metric stay exact on it. Ordering is decided exactly
/// (a^2 vs 2 b^2) without any floating-point evaluation.
class Surd {
 public:
  Surd() = default;
  Surd(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Surd(Rational a, Rational b);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;
  double to_double() const;

  Surd conjugate() const { return Surd(a_, -b_); }

  Surd operator-() const { return Surd(-a_, -b_); }
  friend Surd operator+(const Surd& l, const Surd& r);
  friend Surd operator-(const Surd& l, const Surd& r);
  friend Surd operator*(const Surd& l, const Surd& r);
  friend Surd operator/(const Surd& l, const Surd& r);

  friend bool operator==(const Surd& l, const Surd& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend std::strong_ordering operator<=>(const Surd& l, const Surd& r);

 private:
  Rational a_{0};
  Rational b_{0};
};

enum class PointKind { rational, irrational, floating };

/// A real number that is either exact (in Q(sqrt2)) or a finite double.
///
/// Points of the space and G-values share this type. Arithmetic between two
/// exact values stays exact; anything touching a float becomes a float.
/// Comparisons are always exact: a float operand is promoted to the rational
/// it denotes before comparing.
class Real {
 public:
  Real() : v_(Surd{}) {}
  Real(int v) : v_(Surd(Rational(v))) {}  // NOLINT
  Real(Rational v) : v_(Surd(std::move(v))) {}  // NOLINT
  Real(Surd v) : v_(std::move(v)) {}  // NOLINT

  static Real rational(const Rational& v) { return Real(v); }
  static Real rational(long num, long den);
  /// a + b*sqrt2 with b != 0.
  static Real irrational(const Rational& a, const Rational& b);
  static Real floating(double v);
  /// The exact rational value of a finite double.
  static Real exact_from_double(double v);

  PointKind kind() const;
  bool is_exact() const { return std::holds_alternative<Surd>(v_); }
  bool is_rational() const { return kind() == PointKind::rational; }

  const Surd& exact() const;
  const Rational& as_rational() const;
  double to_double() const;
  int sign() const;

  /// Promotes a float to its exact rational value; exact values pass through.
  Surd to_exact() const;

  Real operator-() const;
  friend Real operator+(const Real& l, const Real& r);
  friend Real operator-(const Real& l, const Real& r);
  friend Real operator*(const Real& l, const Real& r);
  friend Real operator/(const Real& l, const Real& r);
  Real& operator+=(const Real& r) { return *this = *this + r; }
  Real& operator-=(const Real& r) { return *this = *this - r; }
  Real& operator*=(const Real& r) { return *this = *this * r; }
  Real& operator/=(const Real& r) { return *this = *this / r; }

  /// Numeric equality (exact against floats); the tag is not compared.
  friend bool operator==(const Real& l, const Real& r);
  friend std::strong_ordering operator<=>(const Real& l, const Real& r);

  /// "p/q", "a+b*sqrt2" or the shortest round-trip float literal.
  std::string to_string() const;
  static Real parse(std::string_view text);

 private:
  std::variant<Surd, double> v_;
};

using Point = Real;

Real abs(const Real& v);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real pow(const Real& base, unsigned exponent);

/// x <= y + slack, with an exact comparison.
bool less_equal_with_slack(const Real& x, const Real& y, double slack);

std::string to_string(PointKind kind);

}  // namespace gmfp
