#pragma once

#include <functional>
#include <string>
#include <utility>

#include "gmfp/errors.hpp"
#include "gmfp/real.hpp"

namespace gmfp {

/// n(x): the power applied at x.
using PowerSchedule = std::function<int(const Point&)>;

/// A self-map of the space with n-fold composition and an optional
/// prescribed power schedule.
class SelfMap {
 public:
  using Fn = std::function<Point(const Point&)>;

  SelfMap() = default;
  SelfMap(std::string name, Fn fn, PowerSchedule schedule = {})
      : name_(std::move(name)), fn_(std::move(fn)), schedule_(std::move(schedule)) {}

  const std::string& name() const { return name_; }

  Point operator()(const Point& x) const { return fn_(x); }

  /// T^n x; n = 0 returns x.
  Point power(const Point& x, int n) const {
    if (n < 0) throw InputError("negative map power");
    Point y = x;
    for (int i = 0; i < n; ++i) y = fn_(y);
    return y;
  }

  bool has_schedule() const { return static_cast<bool>(schedule_); }
  const PowerSchedule& schedule() const { return schedule_; }
  SelfMap with_schedule(PowerSchedule s) const { return SelfMap(name_, fn_, std::move(s)); }

 private:
  std::string name_;
  Fn fn_;
  PowerSchedule schedule_;
};

inline SelfMap identity_map() {
  return SelfMap("identity", [](const Point& x) { return x; });
}

/// x -> c x.
inline SelfMap scale_map(const Real& c) {
  return SelfMap("scale:" + c.to_string(), [c](const Point& x) { return c * x; });
}

/// x -> a x + b.
inline SelfMap affine_map(const Real& a, const Real& b) {
  return SelfMap("affine:" + a.to_string() + ":" + b.to_string(),
                 [a, b](const Point& x) { return a * x + b; });
}

}  // namespace gmfp
