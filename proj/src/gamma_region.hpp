#ifndef INTREG_GAMMA_REGION_HPP
#define INTREG_GAMMA_REGION_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "sample.hpp"

namespace intreg {

// Explicit description of the feasible set
//   Gamma_G = {(b, c) >= 0 : b spr x_k + c |mid x_k| <= spr y_k for all k}
// for the spread coefficients of the flexible simple model.
//
// Observations with |mid x_k| > 0 contribute lines c = -u_k b + v_k;
// observations with mid x_k = 0 and spr x_k > 0 contribute only the vertical
// bound b <= spr y_k / spr x_k; observations with x_k = [0 +- 0] contribute
// nothing.
struct GammaG {
  static constexpr double inf = std::numeric_limits<double>::infinity();

  struct Line {
    double u, v;             // c = -u b + v
    std::size_t source_row;  // observation index the line came from
  };
  struct Segment {
    std::size_t line;        // index into lines
    double b_lo, b_hi;
  };

  double r0 = inf;           // min_k v_k over lines
  double s0 = inf;           // min over all spread-positive rows of spr y/spr x
  std::vector<Line> lines;   // deduped (near-parallel keep the smaller v)
  std::vector<double> vertical_bounds;
  std::vector<Segment> boundary;  // ordered lower-envelope pieces on [0, s0]

  // Lower envelope of the lines at b (+inf when there are no lines).
  double envelope(double b) const;

  // Membership test against the raw constraint system.
  bool contains(double b, double c, double tol = 1e-12) const;

  // True when s0 is attained strictly by a vertical bound, leaving a vertical
  // boundary face {(s0, c) : 0 <= c <= envelope(s0)} of positive height.
  bool has_vertical_face() const;
};

GammaG build_gamma_g(const IntervalSample& x, const IntervalSample& y);

}  // namespace intreg

#endif
