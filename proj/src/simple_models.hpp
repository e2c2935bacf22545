#ifndef INTREG_SIMPLE_MODELS_HPP
#define INTREG_SIMPLE_MODELS_HPP

#include "gamma_region.hpp"
#include "sample.hpp"

namespace intreg {

enum class SimpleKind { basic, model_m, model_mg };

// A fitted simple model. Coefficient slots follow the flexible-model layout:
//   basic:    b1 = b (signed slope), b2..b4 unused (0)
//   model M:  b1 (mid slope), b2 >= 0 (spread slope), b3 = b4 = 0
//   model MG: b1, b2 >= 0, b3 >= 0, b4
struct SimpleFit {
  SimpleKind kind;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
  Interval delta;        // [gamma - delta, gamma + delta]
  double theta;
  double r_squared;      // in [0, 1]
  double objective;      // (1/n) sum d_theta^2(y_j, yhat_j)
};

struct Residuals {
  std::vector<Interval> values;
};

SimpleFit fit_basic(const IntervalSample& x, const IntervalSample& y,
                    Theta theta);
SimpleFit fit_model_m(const IntervalSample& x, const IntervalSample& y,
                      Theta theta);
SimpleFit fit_mg(const IntervalSample& x, const IntervalSample& y,
                 Theta theta);

Interval predict(const SimpleFit& fit, const Interval& x);

// eps_j = y_j -_H (fitted part without Delta); mean of the residuals
// reproduces Delta.
Residuals residuals(const SimpleFit& fit, const IntervalSample& x,
                    const IntervalSample& y);

// 1 - sum d^2(y_j, yhat_j) / sum d^2(y_j, ybar), clamped onto [0, 1].
double r_squared(const std::vector<Interval>& predicted,
                 const IntervalSample& y, Theta theta);

// Spread-block quadratic g(b, c) of the boundary algorithm, theta factored
// out. Exposed for the region subcommand and tests.
struct SpreadObjective {
  double var_s, var_c, cov_sc, cov_sy, cov_cy;
  double operator()(double b, double c) const {
    return b * b * var_s + c * c * var_c + 2.0 * b * c * cov_sc -
           2.0 * b * cov_sy - 2.0 * c * cov_cy;
  }
};

// Candidate points examined by the exact algorithm when the global minimum
// falls outside Gamma_G.
struct MgSpreadSolution {
  double b2, b3;
  bool interior;                     // global minimum was feasible
  double nu_b, nu_c;                 // unconstrained minimizer
  double cand_l1_b, cand_l1_c;
  double cand_l2_b, cand_l2_c;       // best segment minimum
  double cand_l3_b, cand_l3_c;
  bool has_face_cand = false;        // vertical face at b = s0, when present
  double cand_face_b = 0.0, cand_face_c = 0.0;
};

MgSpreadSolution solve_mg_spread(const SpreadObjective& g, const GammaG& region);
SpreadObjective make_spread_objective(const IntervalSample& x,
                                      const IntervalSample& y);

}  // namespace intreg

#endif
