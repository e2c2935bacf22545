// Test-only reference implementations, independent of the library's
// estimation paths: a multiscale feasible-grid QP oracle with an
// active-face polish, and plain OLS helpers built directly on Eigen.
#ifndef INTREG_TESTS_ORACLE_HPP
#define INTREG_TESTS_ORACLE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "multiple_models.hpp"
#include "sample.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// f(a) = 0.5 a'Ha + g'a over {a >= 0, A a <= b}. A is elementwise >= 0 for
// every problem in this artifact, which the pruning below relies on.
struct BoxedQp {
  MatrixXd H;
  VectorXd g;
  MatrixXd A;
  VectorXd b;
};

inline double qp_value(const BoxedQp& q, const VectorXd& a) {
  return 0.5 * a.dot(q.H * a) + q.g.dot(a);
}

inline bool qp_feasible(const BoxedQp& q, const VectorXd& a, double tol) {
  if ((a.array() < -tol).any()) return false;
  for (Eigen::Index j = 0; j < q.A.rows(); ++j)
    if (q.A.row(j).dot(a) > q.b(j) + tol * (1.0 + std::abs(q.b(j))))
      return false;
  return true;
}

// Recursive grid scan with monotone partial-sum pruning.
inline void scan_grid(const BoxedQp& q, const VectorXd& lo, const VectorXd& hi,
                      int points, Eigen::Index dim, VectorXd& a,
                      VectorXd& row_acc, double& best, VectorXd& best_a) {
  const Eigen::Index p = q.H.rows();
  if (dim == p) {
    const double v = qp_value(q, a);
    if (v < best) {
      best = v;
      best_a = a;
    }
    return;
  }
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? lo(dim)
                                 : lo(dim) + (hi(dim) - lo(dim)) * i /
                                                 (points - 1);
    if (t < 0.0) continue;
    a(dim) = t;
    bool ok = true;
    VectorXd saved = row_acc;
    for (Eigen::Index j = 0; j < q.A.rows(); ++j) {
      row_acc(j) += q.A(j, dim) * t;
      if (row_acc(j) > q.b(j) + 1e-9 * (1.0 + std::abs(q.b(j)))) ok = false;
    }
    if (ok) scan_grid(q, lo, hi, points, dim + 1, a, row_acc, best, best_a);
    row_acc = saved;
  }
  a(dim) = 0.0;
}

// Solve the equality-KKT system on one candidate active face.
inline bool face_solve(const BoxedQp& q, const std::vector<int>& face,
                       const MatrixXd& C, const VectorXd& d, VectorXd& out) {
  const Eigen::Index p = q.H.rows();
  const auto r = static_cast<Eigen::Index>(face.size());
  MatrixXd K(p + r, p + r);
  K.setZero();
  K.topLeftCorner(p, p) = q.H;
  for (Eigen::Index i = 0; i < r; ++i) {
    K.block(p + i, 0, 1, p) = C.row(face[static_cast<std::size_t>(i)]);
    K.block(0, p + i, p, 1) =
        C.row(face[static_cast<std::size_t>(i)]).transpose();
  }
  VectorXd rhs(p + r);
  rhs.head(p) = -q.g;
  for (Eigen::Index i = 0; i < r; ++i)
    rhs(p + i) = d(face[static_cast<std::size_t>(i)]);
  Eigen::FullPivLU<MatrixXd> lu(K);
  if (!lu.isInvertible()) return false;
  const VectorXd sol = lu.solve(rhs);
  out = sol.head(p);
  return true;
}

// Dense multiscale grid + enumeration of plausible active faces around the
// zoomed point. Returns the minimal objective value found.
inline double qp_oracle(const BoxedQp& q, int points = 9, int rounds = 10) {
  const Eigen::Index p = q.H.rows();

  // Per-coordinate feasible upper bounds.
  VectorXd hi(p), lo = VectorXd::Zero(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    double h = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < q.A.rows(); ++j)
      if (q.A(j, i) > 1e-12) h = std::min(h, q.b(j) / q.A(j, i));
    if (!std::isfinite(h)) {
      // Coordinate unbounded by rows: fall back to a curvature-based box.
      const double curv = q.H(i, i);
      h = curv > 1e-12 ? 2.0 * std::abs(q.g(i)) / curv + 1.0 : 1.0;
    }
    hi(i) = h;
  }

  double best = qp_value(q, VectorXd::Zero(p));
  VectorXd best_a = VectorXd::Zero(p);
  VectorXd box_lo = lo, box_hi = hi;
  for (int r = 0; r < rounds; ++r) {
    VectorXd a = VectorXd::Zero(p), acc = VectorXd::Zero(q.A.rows());
    scan_grid(q, box_lo, box_hi, points, 0, a, acc, best, best_a);
    const VectorXd width = (box_hi - box_lo) / (points - 1);
    box_lo = (best_a - 1.7 * width).cwiseMax(0.0);
    box_hi = best_a + 1.7 * width;
  }

  // Active-face polish: combined rows C a <= d with the nonneg bounds.
  const Eigen::Index m = q.A.rows();
  MatrixXd C(m + p, p);
  VectorXd d(m + p);
  C.topRows(m) = q.A;
  d.head(m) = q.b;
  C.bottomRows(p) = -MatrixXd::Identity(p, p);
  d.tail(p).setZero();

  std::vector<int> near;
  const double act_tol =
      10.0 * (box_hi - box_lo).lpNorm<Eigen::Infinity>();
  for (Eigen::Index j = 0; j < C.rows(); ++j)
    if (std::abs(C.row(j).dot(best_a) - d(j)) <= act_tol * (1.0 + std::abs(d(j))))
      near.push_back(static_cast<int>(j));

  if (near.size() <= 16) {  // enumerate subsets of the near-active set
    const std::size_t subsets = std::size_t{1} << near.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < near.size(); ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(near[i]);
      if (face.size() > static_cast<std::size_t>(p)) continue;
      VectorXd cand;
      if (!face_solve(q, face, C, d, cand)) continue;
      if (!qp_feasible(q, cand, 1e-9)) continue;
      best = std::min(best, qp_value(q, cand));
    }
  }
  return best;
}

// ---- estimator-level oracles (raw Eigen, no library estimation calls) ----

inline VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline MatrixXd centered_cols(const std::vector<VectorXd>& cols) {
  MatrixXd m(cols[0].size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) =
        cols[i].array() - cols[i].mean();
  return m;
}

// Minimal (1/n) sum d_theta^2 for the flexible simple model over
// R^2 x Gamma_G: closed-form mid block by OLS, spread block by the grid
// oracle over the two spread coefficients.
inline double mg_objective(const intreg::IntervalSample& x,
                           const intreg::IntervalSample& y, double theta) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const VectorXd mx = to_vec(intreg::mids(x)), sx = to_vec(intreg::spreads(x));
  const VectorXd cx = to_vec(intreg::abs_mids(x));
  const VectorXd my = to_vec(intreg::mids(y)), sy = to_vec(intreg::spreads(y));

  MatrixXd Dm(n, 3);
  Dm.col(0).setOnes();
  Dm.col(1) = mx;
  Dm.col(2) = sx;
  const VectorXd mid_resid = my - Dm * Dm.colPivHouseholderQr().solve(my);

  const MatrixXd Fs = centered_cols({sx, cx});
  const VectorXd vs = sy.array() - sy.mean();
  BoxedQp q;
  q.H = 2.0 * theta * Fs.transpose() * Fs;
  q.g = -2.0 * theta * Fs.transpose() * vs;
  q.A.resize(n, 2);
  q.A.col(0) = sx;
  q.A.col(1) = cx;
  q.b = sy;
  const double spread_min = qp_oracle(q) + theta * vs.squaredNorm();
  return (mid_resid.squaredNorm() + spread_min) / static_cast<double>(n);
}

// MBLRM: signed mid block and unsigned spread block share the coefficient
// magnitudes; joint grid search over Gamma'.
inline double mblrm_objective(const intreg::IntervalDataset& ds, double theta) {
  const auto n = static_cast<Eigen::Index>(ds.n());
  const auto k = static_cast<Eigen::Index>(ds.k());
  const VectorXd my = to_vec(intreg::mids(ds.response));
  const VectorXd sy = to_vec(intreg::spreads(ds.response));
  std::vector<VectorXd> mcols, scols;
  for (const auto& p : ds.predictors) {
    mcols.push_back(to_vec(intreg::mids(p)));
    scols.push_back(to_vec(intreg::spreads(p)));
  }
  MatrixXd Fm = centered_cols(mcols), Fs = centered_cols(scols);
  const VectorXd vm = my.array() - my.mean(), vs = sy.array() - sy.mean();
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = Fm.col(i).dot(vm);
    if (c < 0.0) Fm.col(i) = -Fm.col(i);
  }
  BoxedQp q;
  q.H = 2.0 * (Fm.transpose() * Fm + theta * Fs.transpose() * Fs);
  q.g = -2.0 * (Fm.transpose() * vm + theta * Fs.transpose() * vs);
  q.A.resize(n, k);
  for (Eigen::Index i = 0; i < k; ++i) q.A.col(i) = scols[static_cast<std::size_t>(i)];
  q.b = sy;
  const double v = qp_oracle(q) + vm.squaredNorm() + theta * vs.squaredNorm();
  return v / static_cast<double>(n);
}

// MFLRM: OLS mid block on [mid X | spr X], grid oracle over Gamma_2.
inline double mflrm_objective(const intreg::IntervalDataset& ds, double theta) {
  const auto n = static_cast<Eigen::Index>(ds.n());
  const auto k = static_cast<Eigen::Index>(ds.k());
  const VectorXd my = to_vec(intreg::mids(ds.response));
  const VectorXd sy = to_vec(intreg::spreads(ds.response));
  std::vector<VectorXd> mcols, scols, ccols;
  for (const auto& p : ds.predictors) {
    mcols.push_back(to_vec(intreg::mids(p)));
    scols.push_back(to_vec(intreg::spreads(p)));
    ccols.push_back(to_vec(intreg::abs_mids(p)));
  }
  MatrixXd Dm(n, 2 * k + 1);
  Dm.col(0).setOnes();
  for (Eigen::Index i = 0; i < k; ++i) {
    Dm.col(1 + i) = mcols[static_cast<std::size_t>(i)];
    Dm.col(1 + k + i) = scols[static_cast<std::size_t>(i)];
  }
  const VectorXd mid_resid = my - Dm * Dm.colPivHouseholderQr().solve(my);

  std::vector<VectorXd> fscols = scols;
  fscols.insert(fscols.end(), ccols.begin(), ccols.end());
  const MatrixXd Fs = centered_cols(fscols);
  const VectorXd vs = sy.array() - sy.mean();
  BoxedQp q;
  q.H = 2.0 * theta * Fs.transpose() * Fs;
  q.g = -2.0 * theta * Fs.transpose() * vs;
  q.A.resize(n, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    q.A.col(i) = scols[static_cast<std::size_t>(i)];
    q.A.col(k + i) = ccols[static_cast<std::size_t>(i)];
  }
  q.b = sy;
  const double spread_min = qp_oracle(q) + theta * vs.squaredNorm();
  return (mid_resid.squaredNorm() + spread_min) / static_cast<double>(n);
}

// 1-D golden-section + dense grid over [0, s0] for the basic model.
inline double basic_objective(const intreg::IntervalSample& x,
                              const intreg::IntervalSample& y, double theta) {
  const VectorXd mx = to_vec(intreg::mids(x)), sx = to_vec(intreg::spreads(x));
  const VectorXd my = to_vec(intreg::mids(y)), sy = to_vec(intreg::spreads(y));
  const VectorXd vmx = mx.array() - mx.mean(), vsx = sx.array() - sx.mean();
  const VectorXd vmy = my.array() - my.mean(), vsy = sy.array() - sy.mean();
  const double sgn = vmx.dot(vmy) < 0.0 ? -1.0 : 1.0;

  double s0 = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < sx.size(); ++j)
    if (sx(j) > 0.0) s0 = std::min(s0, sy(j) / sx(j));
  if (!std::isfinite(s0)) s0 = 1e3;

  auto f = [&](double a) {
    return ((vmy - sgn * a * vmx).squaredNorm() +
            theta * (vsy - a * vsx).squaredNorm()) /
           static_cast<double>(mx.size());
  };
  double best = f(0.0), arg = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double a = s0 * i / 4000.0;
    if (f(a) < best) {
      best = f(a);
      arg = a;
    }
  }
  double lo = std::max(0.0, arg - s0 / 1000.0), hi = std::min(s0, arg + s0 / 1000.0);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  for (int it = 0; it < 200; ++it) {
    if (f(c) < f(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - phi * (hi - lo);
    d = lo + phi * (hi - lo);
  }
  return std::min(best, f((lo + hi) / 2.0));
}

// 2-D oracle for model M: closed-form b1 (OLS on mids), grid + golden on b2.
inline double model_m_objective(const intreg::IntervalSample& x,
                                const intreg::IntervalSample& y,
                                double theta) {
  const VectorXd mx = to_vec(intreg::mids(x)), sx = to_vec(intreg::spreads(x));
  const VectorXd my = to_vec(intreg::mids(y)), sy = to_vec(intreg::spreads(y));
  const VectorXd vmx = mx.array() - mx.mean(), vsx = sx.array() - sx.mean();
  const VectorXd vmy = my.array() - my.mean(), vsy = sy.array() - sy.mean();
  const double b1 = vmx.dot(vmy) / vmx.squaredNorm();
  const double mid_part = (vmy - b1 * vmx).squaredNorm();

  double s0 = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < sx.size(); ++j)
    if (sx(j) > 0.0) s0 = std::min(s0, sy(j) / sx(j));
  if (!std::isfinite(s0)) s0 = 1e3;
  auto fs = [&](double b) { return (vsy - b * vsx).squaredNorm(); };
  double best = fs(0.0);
  for (int i = 0; i <= 4000; ++i) best = std::min(best, fs(s0 * i / 4000.0));
  const double bu = vsx.dot(vsy) / vsx.squaredNorm();
  if (bu >= 0.0 && bu <= s0) best = std::min(best, fs(bu));
  return (mid_part + theta * best) / static_cast<double>(mx.size());
}

}  // namespace oracle

#endif
