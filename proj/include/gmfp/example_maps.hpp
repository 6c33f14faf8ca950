#pragma once

#include <string_view>
#include <vector>

#include "gmfp/gmetric.hpp"
#include "gmfp/random.hpp"
#include "gmfp/self_map.hpp"

namespace gmfp::examples {

/// Index n of the dyadic shell I_n = [2^-n, 2^-(n-1)] holding x in (0, 1].
/// A shared endpoint x = 2^-n belongs to I_n (it is that shell's left end).
int interval_index(const Rational& x);
int interval_index(const Point& x);

/// Left endpoint 2^-n of I_n.
Rational shell_lower(int n);
/// Right endpoint 2^-(n-1) of I_n.
Rational shell_upper(int n);

/// (3n + 5) / (2^(n+1) (n + 2)): where the constant branch of the cascade
/// map hands over to the linear one inside I_n.
Rational cascade_branch_point(int n);

/// (n + 3) / (n + 4): Lipschitz constant of the cascade map at points of I_n.
Rational cascade_lipschitz_bound(int n);

/// The cascade map on [0, 1]. Maps I_n onto I_{n+1}, fixes only 0.
///   T x = 2^-(n+1)                                 on [2^-n, b_n]
///   T x = (n+2)/(n+3) (x - 2^-(n-1)) + 2^-n        on [b_n, 2^-(n-1)]
Rational cascade(const Rational& x);
/// Point overload; DomainError unless x is an exact rational in [0, 1].
Point cascade_map(const Point& x);

/// n + 3 on I_n, 1 at 0.
int cascade_power_schedule(const Point& x);

/// 1 - x on rationals, 1/2 on irrationals.
Point rational_reflection_map(const Point& x);
/// x on rationals, 1 - x on irrationals.
Point rational_identity_map(const Point& x);

SelfMap cascade_self_map();
SelfMap rational_reflection_self_map();
SelfMap rational_identity_self_map();
/// 1 if x > 1/2 else 0; discontinuous at 1/2.
SelfMap step_self_map();

/// Resolves "cascade", "rational-reflection", "rational-identity",
/// "identity", "step", "scale:<c>" (x -> c x) and "affine:<a>:<b>"
/// (x -> a x + b). InputError on an unknown name.
SelfMap resolve_map(std::string_view name);
std::vector<std::string_view> map_names();

/// Rational drawn from I_n with a random denominator.
Point sample_shell_point(int n, Rng& rng);

/// Witness pairs for find_power at x on the cascade map: half from the
/// shells next to x, half spread over [0, 1].
std::vector<PointPair> cascade_witnesses(const Point& x, std::size_t count, Rng& rng);

}  // namespace gmfp::examples
