#ifndef INTREG_QP_HPP
#define INTREG_QP_HPP

#include <Eigen/Dense>
#include <vector>

namespace intreg {

// min 0.5 a' H a + g' a   subject to  A a <= b  and  a_i >= 0 for masked i.
// H symmetric positive semidefinite. All problems this artifact generates
// have a = 0 feasible (b = spr y >= 0).
struct QpProblem {
  Eigen::MatrixXd H;         // p x p
  Eigen::VectorXd g;         // p
  Eigen::MatrixXd A;         // m x p (m may be 0)
  Eigen::VectorXd b;         // m
  std::vector<bool> nonneg;  // p entries
};

struct QpSolution {
  Eigen::VectorXd a_star;
  // Multipliers aligned with [rows of A..., nonneg bounds in index order...].
  Eigen::VectorXd multipliers;
  std::vector<int> active_set;  // indices into the combined constraint list
  double kkt_residual;
  double objective;             // 0.5 a'Ha + g'a
  int iterations;
};

// Centralized tolerances.
struct QpTolerances {
  double feasibility = 1e-8;
  double stationarity = 1e-8;
  double psd_slack = 1e-10;     // relative to ||H||
};

QpSolution qp_solve(const QpProblem& problem);

// Max of primal-infeasibility, dual-infeasibility, stationarity and
// complementarity residuals for the best least-squares multiplier fit on the
// near-active constraints.
double qp_check_kkt(const QpProblem& problem, const Eigen::VectorXd& candidate);

}  // namespace intreg

#endif
