#include "gmfp/example_maps.hpp"

#include <algorithm>
#include <string>

#include "gmfp/errors.hpp"

namespace gmfp::examples {

namespace {

Rational two_pow_neg(long k) {
  Rational v(1);
  if (k >= 0) {
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return v;
}

void require_unit_rational(const Rational& x, const char* op) {
  if (x < 0 || x > 1) throw DomainError(std::string(op) + ": " + x.get_str() + " lies outside [0, 1]");
}

}  // namespace

Rational shell_lower(int n) { return two_pow_neg(n); }

Rational shell_upper(int n) { return two_pow_neg(n - 1); }

int interval_index(const Rational& x) {
  if (sgn(x) <= 0 || x > 1) {
    throw DomainError("interval_index: " + x.get_str() + " is not in (0, 1]");
  }
  // Smallest n >= 1 with x >= 2^-n; start from the bit-length estimate.
  const long bits = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
  int n = static_cast<int>(std::max(1L, bits));
  while (n > 1 && x >= shell_lower(n - 1)) --n;
  while (x < shell_lower(n)) ++n;
  return n;
}

int interval_index(const Point& x) { return interval_index(x.as_rational()); }

Rational cascade_branch_point(int n) {
  Rational b(3 * n + 5, n + 2);
  b *= shell_lower(n + 1);
  b.canonicalize();
  return b;
}

Rational cascade_lipschitz_bound(int n) {
  Rational r(n + 3, n + 4);
  r.canonicalize();
  return r;
}

Rational cascade(const Rational& x) {
  require_unit_rational(x, "cascade");
  if (sgn(x) == 0) return Rational(0);
  const int n = interval_index(x);
  if (x <= cascade_branch_point(n)) return shell_lower(n + 1);
  Rational slope(n + 2, n + 3);
  slope.canonicalize();
  Rational y = slope * (x - shell_upper(n)) + shell_lower(n);
  y.canonicalize();
  return y;
}

Point cascade_map(const Point& x) { return Real(cascade(x.as_rational())); }

int cascade_power_schedule(const Point& x) {
  const Rational& q = x.as_rational();
  require_unit_rational(q, "cascade_power_schedule");
  if (sgn(q) == 0) return 1;
  return interval_index(q) + 3;
}

namespace {

const Surd& rationality_decidable(const Point& x, const char* op) {
  if (!x.is_exact()) {
    throw DomainError(std::string(op) + ": rationality of float " + x.to_string() + " is undecidable");
  }
  return x.exact();
}

}  // namespace

Point rational_reflection_map(const Point& x) {
  const Surd& s = rationality_decidable(x, "rational_reflection_map");
  if (s.is_rational()) return Real(1) - x;
  return Real::rational(1, 2);
}

Point rational_identity_map(const Point& x) {
  const Surd& s = rationality_decidable(x, "rational_identity_map");
  if (s.is_rational()) return x;
  return Real(1) - x;
}

SelfMap cascade_self_map() { return SelfMap("cascade", cascade_map, cascade_power_schedule); }

SelfMap rational_reflection_self_map() { return SelfMap("rational-reflection", rational_reflection_map); }

SelfMap rational_identity_self_map() { return SelfMap("rational-identity", rational_identity_map); }

SelfMap step_self_map() {
  return SelfMap("step", [](const Point& x) { return x > Real::rational(1, 2) ? Real(1) : Real(0); });
}

SelfMap resolve_map(std::string_view name) {
  if (name == "cascade") return cascade_self_map();
  if (name == "rational-reflection") return rational_reflection_self_map();
  if (name == "rational-identity") return rational_identity_self_map();
  if (name == "identity") return identity_map();
  if (name == "step") return step_self_map();
  if (name.starts_with("scale:")) return scale_map(Real::parse(name.substr(6)));
  if (name.starts_with("affine:")) {
    const auto rest = name.substr(7);
    const auto sep = rest.find(':');
    if (sep == std::string_view::npos) throw InputError("affine map needs 'affine:<a>:<b>'");
    return affine_map(Real::parse(rest.substr(0, sep)), Real::parse(rest.substr(sep + 1)));
  }
  throw InputError("unknown map '" + std::string(name) + "'");
}

std::vector<std::string_view> map_names() {
  return {"cascade", "rational-reflection", "rational-identity", "identity", "step", "scale:<c>",
          "affine:<a>:<b>"};
}

Point sample_shell_point(int n, Rng& rng) {
  if (n < 1) throw InputError("sample_shell_point: shell index must be >= 1");
  // 2^-n (1 + k/q): covers I_n including both endpoints.
  const auto q = static_cast<unsigned long>(uniform_index(rng, 1, 1u << 16));
  const auto k = static_cast<unsigned long>(uniform_index(rng, 0, q));
  Rational v(q + k, q);
  v *= shell_lower(n);
  v.canonicalize();
  return Real(v);
}

std::vector<PointPair> cascade_witnesses(const Point& x, std::size_t count, Rng& rng) {
  const int n = sgn(x.as_rational()) == 0 ? 1 : interval_index(x);
  const Sampler global = Sampler::dyadic_shells(n + 8);
  std::vector<PointPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      const int lo = std::max(1, n - 1);
      const int m1 = static_cast<int>(uniform_index(rng, lo, n + 2));
      const int m2 = static_cast<int>(uniform_index(rng, lo, n + 2));
      Point y = sample_shell_point(m1, rng);
      Point z = sample_shell_point(m2, rng);
      out.emplace_back(std::move(y), std::move(z));
    } else {
      out.push_back(global.pair(rng));
    }
  }
  return out;
}

}  // namespace gmfp::examples
