#include "multiple_models.hpp"

#include <algorithm>
#include <cmath>

#include "simple_models.hpp"

namespace intreg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd column(const IntervalSample& s, bool spread, bool absolute = false) {
  VectorXd out(static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double v = spread ? s.values[j].spr : s.values[j].mid;
    out(static_cast<Eigen::Index>(j)) = absolute ? std::abs(v) : v;
  }
  return out;
}

MatrixXd centered(MatrixXd m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    m.col(c).array() -= m.col(c).mean();
  return m;
}

void fill_r2_objective(MultipleFit& fit, const IntervalDataset& ds) {
  Theta th(fit.theta);
  std::vector<Interval> pred;
  pred.reserve(ds.n());
  std::vector<Interval> row(ds.k());
  for (std::size_t j = 0; j < ds.n(); ++j) {
    for (std::size_t i = 0; i < ds.k(); ++i) row[i] = ds.predictors[i].values[j];
    pred.push_back(predict_multiple(fit, row));
  }
  fit.r_squared = r_squared(pred, ds.response, th);
  double acc = 0.0;
  for (std::size_t j = 0; j < ds.n(); ++j)
    acc += d_theta_sq(ds.response.values[j], pred[j], th);
  fit.objective = acc / static_cast<double>(ds.n());
}

Interval delta_of(const MultipleFit& fit, const IntervalDataset& ds) {
  double fit_mid = 0.0, fit_spr = 0.0;
  for (std::size_t i = 0; i < ds.k(); ++i) {
    const Interval xbar = sample_mean(ds.predictors[i]);
    const double cbar = mean_of(abs_mids(ds.predictors[i]));
    const auto ii = static_cast<Eigen::Index>(i);
    fit_mid += fit.b1(ii) * xbar.mid + fit.b4(ii) * xbar.spr;
    fit_spr += fit.b2(ii) * xbar.spr + fit.b3(ii) * cbar;
  }
  return hukuhara_diff(sample_mean(ds.response), Interval{fit_mid, fit_spr});
}

}  // namespace

void IntervalDataset::validate() const {
  if (predictors.empty())
    throw Error(Errc::invalid_argument, "dataset needs k >= 1 predictors");
  for (const IntervalSample& p : predictors)
    if (p.size() != response.size())
      throw Error(Errc::length_mismatch,
                  "predictor '" + p.name + "' has " +
                      std::to_string(p.size()) + " rows, response has " +
                      std::to_string(response.size()));
}

DesignMatrices assemble_design(const IntervalDataset& ds, MultipleKind kind) {
  ds.validate();
  const auto n = static_cast<Eigen::Index>(ds.n());
  const auto k = static_cast<Eigen::Index>(ds.k());

  DesignMatrices d;
  d.raw_sprX.resize(n, k);
  d.raw_absmidX.resize(n, k);
  MatrixXd midX(n, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const IntervalSample& p = ds.predictors[static_cast<std::size_t>(i)];
    d.raw_sprX.col(i) = column(p, true);
    d.raw_absmidX.col(i) = column(p, false, true);
    midX.col(i) = column(p, false);
  }
  d.raw_spry = column(ds.response, true);
  d.v_m = centered(column(ds.response, false));
  d.v_s = centered(d.raw_spry);

  if (kind == MultipleKind::mflrm) {
    d.F_m.resize(n, 2 * k);
    d.F_m << centered(midX), centered(d.raw_sprX);
    d.F_s.resize(n, 2 * k);
    d.F_s << centered(d.raw_sprX), centered(d.raw_absmidX);
  } else {
    d.F_m = centered(midX);
    d.F_s = centered(d.raw_sprX);
  }
  return d;
}

MultipleFit fit_mblrm(const IntervalDataset& ds, Theta theta) {
  ds.validate();
  const auto k = static_cast<Eigen::Index>(ds.k());
  if (ds.n() < ds.k() + 2)
    throw Error(Errc::empty_sample, "need n >= k + 2 observations");
  DesignMatrices d = assemble_design(ds, MultipleKind::mblrm);

  // Signs from the mid relationship, +1 on zero covariance.
  VectorXd sgn(k);
  const auto my = mids(ds.response);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c =
        cov_of(mids(ds.predictors[static_cast<std::size_t>(i)]), my);
    sgn(i) = c < 0.0 ? -1.0 : 1.0;
  }
  const MatrixXd Fm_signed = d.F_m * sgn.asDiagonal();

  QpProblem qp;
  qp.H = 2.0 * (Fm_signed.transpose() * Fm_signed +
                theta.value * d.F_s.transpose() * d.F_s);
  qp.g = -2.0 * (Fm_signed.transpose() * d.v_m +
                 theta.value * d.F_s.transpose() * d.v_s);
  qp.A = d.raw_sprX;
  qp.b = d.raw_spry;
  qp.nonneg.assign(static_cast<std::size_t>(k), true);
  QpSolution sol = qp_solve(qp);

  MultipleFit fit{};
  fit.kind = MultipleKind::mblrm;
  fit.theta = theta.value;
  fit.b1 = sgn.cwiseProduct(sol.a_star);
  fit.b2 = sol.a_star;
  fit.b3 = VectorXd::Zero(k);
  fit.b4 = VectorXd::Zero(k);
  fit.kkt_residual = sol.kkt_residual;
  fit.delta = delta_of(fit, ds);
  fill_r2_objective(fit, ds);
  return fit;
}

namespace {

// Shared core of MFLRM and its b3 = b4 = 0 restriction.
MultipleFit fit_flexible(const IntervalDataset& ds, Theta theta,
                         bool restricted) {
  ds.validate();
  const auto k = static_cast<Eigen::Index>(ds.k());
  if (ds.n() < ds.k() + 2)
    throw Error(Errc::empty_sample, "need n >= k + 2 observations");
  DesignMatrices d = assemble_design(
      ds, restricted ? MultipleKind::multiple_m : MultipleKind::mflrm);

  // Mid block: unconstrained least squares, separable from the spread block.
  Eigen::ColPivHouseholderQR<MatrixXd> qr(d.F_m);
  qr.setThreshold(1e-10);
  if (qr.rank() < d.F_m.cols())
    throw Error(Errc::degenerate_regressor, "mid-block design is rank-deficient");
  const VectorXd beta = qr.solve(d.v_m);

  // Spread block: QP over Gamma' (restricted) or Gamma_2.
  QpProblem qp;
  if (restricted) {
    qp.A = d.raw_sprX;
  } else {
    qp.A.resize(d.raw_sprX.rows(), 2 * k);
    qp.A << d.raw_sprX, d.raw_absmidX;
  }
  qp.H = 2.0 * theta.value * (d.F_s.transpose() * d.F_s);
  qp.g = -2.0 * theta.value * (d.F_s.transpose() * d.v_s);
  qp.b = d.raw_spry;
  qp.nonneg.assign(static_cast<std::size_t>(qp.A.cols()), true);
  QpSolution sol = qp_solve(qp);

  MultipleFit fit{};
  fit.kind = restricted ? MultipleKind::multiple_m : MultipleKind::mflrm;
  fit.theta = theta.value;
  fit.b1 = beta.head(k);
  fit.b4 = restricted ? VectorXd::Zero(k) : beta.tail(k).eval();
  fit.b2 = sol.a_star.head(k);
  fit.b3 = restricted ? VectorXd::Zero(k) : sol.a_star.tail(k).eval();
  fit.kkt_residual = sol.kkt_residual;
  fit.delta = delta_of(fit, ds);
  fill_r2_objective(fit, ds);
  return fit;
}

}  // namespace

MultipleFit fit_mflrm(const IntervalDataset& ds, Theta theta) {
  return fit_flexible(ds, theta, false);
}

MultipleFit fit_multiple_m(const IntervalDataset& ds, Theta theta) {
  return fit_flexible(ds, theta, true);
}

Interval predict_multiple(const MultipleFit& fit,
                          const std::vector<Interval>& x_row) {
  if (static_cast<Eigen::Index>(x_row.size()) != fit.b1.size())
    throw Error(Errc::length_mismatch,
                "prediction row has " + std::to_string(x_row.size()) +
                    " predictors, fit has " + std::to_string(fit.b1.size()));
  double mid = fit.delta.mid, spr = fit.delta.spr;
  for (std::size_t i = 0; i < x_row.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    mid += fit.b1(ii) * x_row[i].mid + fit.b4(ii) * x_row[i].spr;
    spr += fit.b2(ii) * x_row[i].spr + fit.b3(ii) * std::abs(x_row[i].mid);
  }
  return Interval{mid, spr};
}

std::vector<Interval> residuals_multiple(const MultipleFit& fit,
                                         const IntervalDataset& ds) {
  ds.validate();
  std::vector<Interval> out;
  out.reserve(ds.n());
  std::vector<Interval> row(ds.k());
  for (std::size_t j = 0; j < ds.n(); ++j) {
    for (std::size_t i = 0; i < ds.k(); ++i) row[i] = ds.predictors[i].values[j];
    Interval fitted = predict_multiple(fit, row);
    fitted.mid -= fit.delta.mid;
    fitted.spr -= fit.delta.spr;
    out.push_back(hukuhara_diff(ds.response.values[j], fitted));
  }
  return out;
}

}  // namespace intreg
