#ifndef INTREG_INTERVAL_HPP
#define INTREG_INTERVAL_HPP

#include <cmath>
#include <string>

#include "errors.hpp"

namespace intreg {

// Tolerance for Hukuhara-difference existence. LS estimates land exactly on
// the boundary of the feasible set, where the residual spread is analytically
// zero but numerically of order 1e-12.
inline constexpr double kHukuharaTol = 1e-9;

// A compact real interval stored as (midpoint, spread), spread >= 0.
struct Interval {
  double mid = 0.0;
  double spr = 0.0;

  double inf() const { return mid - spr; }
  double sup() const { return mid + spr; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.mid == b.mid && a.spr == b.spr;
  }
};

// Positive weight of the spread term in the d_theta metric.
struct Theta {
  double value;

  explicit Theta(double v) : value(v) {
    if (!(v > 0.0))
      throw Error(Errc::invalid_argument, "theta must be positive");
  }
};

inline Interval interval_from_endpoints(double inf, double sup) {
  if (!(inf <= sup))
    throw Error(Errc::invalid_endpoints,
                "interval endpoints reversed: [" + std::to_string(inf) + ", " +
                    std::to_string(sup) + "]");
  return Interval{(sup + inf) / 2.0, (sup - inf) / 2.0};
}

// A + lambda * B in the Minkowski arithmetic.
inline Interval add_scaled(const Interval& a, double lambda,
                           const Interval& b) {
  return Interval{a.mid + lambda * b.mid, a.spr + std::abs(lambda) * b.spr};
}

// C with B + C = A; exists iff spr B <= spr A (up to kHukuharaTol).
inline Interval hukuhara_diff(const Interval& a, const Interval& b) {
  double spr = a.spr - b.spr;
  if (spr < -kHukuharaTol)
    throw Error(Errc::no_hukuhara_difference,
                "Hukuhara difference does not exist: spr B > spr A by " +
                    std::to_string(-spr));
  if (spr < 0.0) spr = 0.0;
  return Interval{a.mid - b.mid, spr};
}

inline double d_theta(const Interval& a, const Interval& b, Theta theta) {
  const double dm = a.mid - b.mid;
  const double ds = a.spr - b.spr;
  return std::sqrt(dm * dm + theta.value * ds * ds);
}

inline double d_theta_sq(const Interval& a, const Interval& b, Theta theta) {
  const double dm = a.mid - b.mid;
  const double ds = a.spr - b.spr;
  return dm * dm + theta.value * ds * ds;
}

}  // namespace intreg

#endif
