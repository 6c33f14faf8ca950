#include "gmfp/real.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "gmfp/errors.hpp"

namespace gmfp {

Surd::Surd(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

int Surd::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of |a| and |b|*sqrt2 wins. Equality is
  // impossible because sqrt2 is irrational.
  const Rational a2 = a_ * a_;
  const Rational b2 = 2 * b_ * b_;
  return a2 > b2 ? sa : sb;
}

double Surd::to_double() const {
  return a_.get_d() + b_.get_d() * std::numbers::sqrt2;
}

Surd operator+(const Surd& l, const Surd& r) {
  return Surd(l.a_ + r.a_, l.b_ + r.b_);
}

Surd operator-(const Surd& l, const Surd& r) {
  return Surd(l.a_ - r.a_, l.b_ - r.b_);
}

Surd operator*(const Surd& l, const Surd& r) {
  if (l.is_rational() && r.is_rational()) return Surd(Rational(l.a_ * r.a_));
  return Surd(l.a_ * r.a_ + 2 * l.b_ * r.b_, l.a_ * r.b_ + l.b_ * r.a_);
}

Surd operator/(const Surd& l, const Surd& r) {
  if (r.sign() == 0) throw std::domain_error("division by zero");
  if (r.is_rational()) return Surd(Rational(l.a_ / r.a_), Rational(l.b_ / r.a_));
  // (a + b s)/(c + d s) = (a + b s)(c - d s) / (c^2 - 2 d^2)
  const Rational norm = r.a_ * r.a_ - 2 * r.b_ * r.b_;
  const Surd num = l * r.conjugate();
  return Surd(Rational(num.a_ / norm), Rational(num.b_ / norm));
}

std::strong_ordering operator<=>(const Surd& l, const Surd& r) {
  const int s = (l - r).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Real Real::rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Real(q);
}

Real Real::irrational(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw InputError("irrational-form point needs a nonzero sqrt2 coefficient");
  return Real(Surd(a, b));
}

Real Real::floating(double v) {
  if (!std::isfinite(v)) throw InputError("float points must be finite");
  Real r;
  r.v_ = v;
  return r;
}

Real Real::exact_from_double(double v) {
  if (!std::isfinite(v)) throw InputError("cannot convert a non-finite double");
  return Real(Rational(v));
}

PointKind Real::kind() const {
  if (const auto* s = std::get_if<Surd>(&v_)) {
    return s->is_rational() ? PointKind::rational : PointKind::irrational;
  }
  return PointKind::floating;
}

const Surd& Real::exact() const {
  if (const auto* s = std::get_if<Surd>(&v_)) return *s;
  throw DomainError("expected an exact point, got float " + to_string());
}

const Rational& Real::as_rational() const {
  const Surd& s = exact();
  if (!s.is_rational()) throw DomainError("expected a rational point, got " + to_string());
  return s.rational_part();
}

double Real::to_double() const {
  if (const auto* s = std::get_if<Surd>(&v_)) return s->to_double();
  return std::get<double>(v_);
}

int Real::sign() const {
  if (const auto* s = std::get_if<Surd>(&v_)) return s->sign();
  const double d = std::get<double>(v_);
  return (d > 0) - (d < 0);
}

Surd Real::to_exact() const {
  if (const auto* s = std::get_if<Surd>(&v_)) return *s;
  return Surd(Rational(std::get<double>(v_)));
}

Real Real::operator-() const {
  if (const auto* s = std::get_if<Surd>(&v_)) return Real(-*s);
  return floating(-std::get<double>(v_));
}

namespace {

template <typename ExactOp, typename FloatOp>
Real combine(const Real& l, const Real& r, ExactOp exact_op, FloatOp float_op) {
  if (l.is_exact() && r.is_exact()) return Real(exact_op(l.exact(), r.exact()));
  return Real::floating(float_op(l.to_double(), r.to_double()));
}

}  // namespace

Real operator+(const Real& l, const Real& r) {
  return combine(l, r, std::plus<>{}, std::plus<>{});
}

Real operator-(const Real& l, const Real& r) {
  return combine(l, r, std::minus<>{}, std::minus<>{});
}

Real operator*(const Real& l, const Real& r) {
  return combine(l, r, std::multiplies<>{}, std::multiplies<>{});
}

Real operator/(const Real& l, const Real& r) {
  if (r.sign() == 0) throw std::domain_error("division by zero");
  return combine(l, r, std::divides<>{}, std::divides<>{});
}

bool operator==(const Real& l, const Real& r) {
  if (!l.is_exact() && !r.is_exact()) return l.to_double() == r.to_double();
  return l.to_exact() == r.to_exact();
}

std::strong_ordering operator<=>(const Real& l, const Real& r) {
  if (!l.is_exact() && !r.is_exact()) {
    const double a = l.to_double();
    const double b = r.to_double();
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return l.to_exact() <=> r.to_exact();
}

// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, end);
  // Keep a float marker so the literal parses back as a float.
  if (out.find_first_of(".en") == std::string::npos) out += ".0";
  return out;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

Rational parse_integer(const std::string& tok, std::string_view whole) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("malformed number literal '" + std::string(whole) + "'");
  }
  return Rational(tok, 10);
}

// One multiplicative term: factors joined by '*' or '/', each an integer or
// "sqrt2" (at most once, never as a divisor).
Surd parse_term(const std::string& term, std::string_view whole) {
  Rational coef(1);
  bool has_sqrt2 = false;
  std::size_t pos = 0;
  char op = '*';
  while (pos <= term.size()) {
    const auto next = term.find_first_of("*/", pos);
    const std::string factor =
        term.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (factor == "sqrt2") {
      if (op == '/' || has_sqrt2) {
        throw InputError("unsupported sqrt2 placement in '" + std::string(whole) + "'");
      }
      has_sqrt2 = true;
    } else {
      const Rational v = parse_integer(factor, whole);
      if (op == '*') {
        coef *= v;
      } else {
        if (sgn(v) == 0) throw InputError("zero denominator in '" + std::string(whole) + "'");
        coef /= v;
      }
    }
    if (next == std::string::npos) break;
    op = term[next];
    pos = next + 1;
  }
  coef.canonicalize();
  return has_sqrt2 ? Surd(Rational(0), coef) : Surd(coef);
}

}  // namespace

std::string Real::to_string() const {
  if (const auto* d = std::get_if<double>(&v_)) return format_double(*d);
  const Surd& s = std::get<Surd>(v_);
  if (s.is_rational()) return format_rational(s.rational_part());
  const Rational& b = s.sqrt2_part();
  std::string out = format_rational(s.rational_part());
  out += sgn(b) < 0 ? "-" : "+";
  out += format_rational(Rational(abs(b)));
  out += "*sqrt2";
  return out;
}

Real Real::parse(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw InputError("empty number literal");
  const bool looks_float =
      s.find("sqrt2") == std::string::npos &&
      (s.find_first_of(".eE") != std::string::npos || s == "inf" || s == "nan");
  if (looks_float) {
    double v = 0;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [end, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
      throw InputError("malformed float literal '" + s + "'");
    }
    return floating(v);
  }
  // Split into signed additive terms.
  Surd total;
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  while (true) {
    const auto next = s.find_first_of("+-", pos);
    const std::string term = trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    const Surd t = parse_term(term, s);
    total = negative ? total - t : total + t;
    if (next == std::string::npos) break;
    negative = s[next] == '-';
    pos = next + 1;
  }
  return Real(total);
}

// ---------------------------------------------------------------------------

Real abs(const Real& v) { return v.sign() < 0 ? -v : v; }

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pow(const Real& base, unsigned exponent) {
  Real result(1);
  Real b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

bool less_equal_with_slack(const Real& x, const Real& y, double slack) {
  if (slack == 0.0) return x <= y;
  if (!x.is_exact() && !y.is_exact()) return x.to_double() <= y.to_double() + slack;
  return x.to_exact() <= y.to_exact() + Surd(Rational(slack));
}

std::string to_string(PointKind kind) {
  switch (kind) {
    case PointKind::rational: return "rational";
    case PointKind::irrational: return "irrational";
    case PointKind::floating: return "float";
  }
  return "unknown";
}

}  // namespace gmfp
