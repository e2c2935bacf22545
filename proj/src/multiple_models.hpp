#ifndef INTREG_MULTIPLE_MODELS_HPP
#define INTREG_MULTIPLE_MODELS_HPP

#include <Eigen/Dense>

#include "qp.hpp"
#include "sample.hpp"

namespace intreg {

// Response plus k explanatory interval samples of common length.
struct IntervalDataset {
  IntervalSample response;
  std::vector<IntervalSample> predictors;

  std::size_t n() const { return response.size(); }
  std::size_t k() const { return predictors.size(); }
  void validate() const;
};

enum class MultipleKind { mblrm, mflrm, multiple_m };

// Centered design blocks plus the raw nonnegative matrices that define the
// feasibility constraints.
struct DesignMatrices {
  Eigen::VectorXd v_m, v_s;          // centered mid / spread response
  Eigen::MatrixXd F_m, F_s;          // centered regressor blocks
  Eigen::MatrixXd raw_sprX;          // n x k
  Eigen::MatrixXd raw_absmidX;       // n x k
  Eigen::VectorXd raw_spry;          // n
};

DesignMatrices assemble_design(const IntervalDataset& ds, MultipleKind kind);

// Coefficients are stored in the flexible layout for every kind:
//   MBLRM:      b1 = signed b, b2 = |b|, b3 = b4 = 0
//   MFLRM:      all four blocks
//   multiple M: b3 = b4 = 0
struct MultipleFit {
  MultipleKind kind;
  Eigen::VectorXd b1, b2, b3, b4;    // length k each
  Interval delta;
  double theta;
  double r_squared;
  double objective;                  // (1/n) sum d_theta^2(y_j, yhat_j)
  double kkt_residual;               // certificate from the QP block
};

MultipleFit fit_mblrm(const IntervalDataset& ds, Theta theta);
MultipleFit fit_mflrm(const IntervalDataset& ds, Theta theta);
MultipleFit fit_multiple_m(const IntervalDataset& ds, Theta theta);

Interval predict_multiple(const MultipleFit& fit,
                          const std::vector<Interval>& x_row);

std::vector<Interval> residuals_multiple(const MultipleFit& fit,
                                         const IntervalDataset& ds);

}  // namespace intreg

#endif
