#ifndef INTREG_SAMPLE_HPP
#define INTREG_SAMPLE_HPP

#include <string>
#include <vector>

#include "interval.hpp"

namespace intreg {

// An ordered sample of intervals sharing one label.
struct IntervalSample {
  std::vector<Interval> values;
  std::string name;

  std::size_t size() const { return values.size(); }
};

// The four derived samples of the canonical decomposition:
//   x^M = [mid x +- 0], x^S = [0 +- spr x], x^C = [0 +- |mid x|],
//   x^R = [spr x +- 0].
struct CanonicalComponents {
  IntervalSample m, s, c, r;
};

CanonicalComponents canonical_components(const IntervalSample& x);

Interval sample_mean(const IntervalSample& x);

// Interval covariance sigma_{mid x, mid y} + theta * sigma_{spr x, spr y},
// divisor n.
double sample_cov(const IntervalSample& x, const IntervalSample& y,
                  Theta theta);
double sample_var(const IntervalSample& x, Theta theta);

// Column extraction helpers used by every estimator.
std::vector<double> mids(const IntervalSample& x);
std::vector<double> spreads(const IntervalSample& x);
std::vector<double> abs_mids(const IntervalSample& x);

// Scalar moments with divisor n.
double mean_of(const std::vector<double>& v);
double cov_of(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace intreg

#endif
