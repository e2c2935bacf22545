#include "qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace intreg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kRankTol = 1e-12;

struct Constraints {
  MatrixXd C;  // m_total x p, rows of "C a <= d"
  VectorXd d;
};

Constraints combined(const QpProblem& q) {
  const Eigen::Index p = q.H.rows();
  Eigen::Index extra = 0;
  for (bool f : q.nonneg) extra += f ? 1 : 0;
  Constraints out;
  out.C.resize(q.A.rows() + extra, p);
  out.d.resize(q.A.rows() + extra);
  out.C.topRows(q.A.rows()) = q.A;
  out.d.head(q.A.rows()) = q.b;
  Eigen::Index r = q.A.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!q.nonneg[static_cast<std::size_t>(i)]) continue;
    out.C.row(r).setZero();
    out.C(r, i) = -1.0;
    out.d(r) = 0.0;
    ++r;
  }
  return out;
}

MatrixXd working_rows(const Constraints& con, const std::vector<int>& w) {
  MatrixXd out(static_cast<Eigen::Index>(w.size()), con.C.cols());
  for (std::size_t i = 0; i < w.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = con.C.row(w[i]);
  return out;
}

// Orthonormal basis of the null space via SVD.
MatrixXd null_space(const MatrixXd& m) {
  const Eigen::Index p = m.cols();
  if (m.rows() == 0) return MatrixXd::Identity(p, p);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * std::max(1.0, smax)) ++rank;
  return svd.matrixV().rightCols(p - rank);
}

void validate(const QpProblem& q, const QpTolerances& tol) {
  const Eigen::Index p = q.H.rows();
  if (q.H.cols() != p || q.g.size() != p ||
      q.nonneg.size() != static_cast<std::size_t>(p) || q.A.cols() != p ||
      q.A.rows() != q.b.size())
    throw Error(Errc::invalid_argument, "qp: inconsistent dimensions");
  const double scale = std::max(1.0, q.H.cwiseAbs().maxCoeff());
  if ((q.H - q.H.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(Errc::invalid_argument, "qp: H not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(q.H);
  if (es.eigenvalues()(0) < -tol.psd_slack * scale)
    throw Error(Errc::qp_not_psd, "qp: H has negative curvature");
}

struct ActiveSetResult {
  VectorXd x;
  std::vector<int> active;
  int iterations;
};

// Primal active-set iteration from a feasible start.
ActiveSetResult active_set_minimize(const MatrixXd& H, const VectorXd& g,
                                    const Constraints& con, VectorXd x) {
  const Eigen::Index p = H.rows();
  const Eigen::Index m = con.C.rows();
  const int max_iter = 50 * static_cast<int>(p + m);

  std::vector<int> w;
  for (Eigen::Index i = 0; i < m; ++i)
    if (std::abs(con.C.row(i).dot(x) - con.d(i)) <=
        1e-12 * (1.0 + std::abs(con.d(i))))
      w.push_back(static_cast<int>(i));
  // Keep a linearly independent subset of the initial active rows.
  {
    std::vector<int> keep;
    MatrixXd rows(0, p);
    for (int i : w) {
      MatrixXd cand(rows.rows() + 1, p);
      cand.topRows(rows.rows()) = rows;
      cand.bottomRows(1) = con.C.row(i);
      Eigen::ColPivHouseholderQR<MatrixXd> qr(cand.transpose());
      qr.setThreshold(kRankTol);
      if (qr.rank() == cand.rows()) {
        keep.push_back(i);
        rows = cand;
      }
    }
    w = keep;
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    const MatrixXd Cw = working_rows(con, w);
    const MatrixXd Z = null_space(Cw);
    const VectorXd grad = H * x + g;

    VectorXd step = VectorXd::Zero(p);
    bool ray = false;
    if (Z.cols() > 0) {
      const MatrixXd Hr = Z.transpose() * H * Z;
      const VectorXd gr = Z.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(Hr);
      const VectorXd& ev = es.eigenvalues();
      const double lmax = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
      VectorXd q = VectorXd::Zero(Z.cols());
      VectorXd proj = es.eigenvectors().transpose() * gr;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > kRankTol * lmax) {
          q -= es.eigenvectors().col(i) * (proj(i) / ev(i));
        } else if (std::abs(proj(i)) > 1e-10 * (1.0 + gr.norm())) {
          // Unbounded descent direction within the working set.
          step = -Z * es.eigenvectors().col(i) *
                 (proj(i) > 0.0 ? 1.0 : -1.0);
          ray = true;
          break;
        }
      }
      if (!ray) step = Z * q;
    }

    if (!ray && step.lpNorm<Eigen::Infinity>() <=
                    1e-11 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      // Stationary on the working set: check multiplier signs.
      if (w.empty()) return {x, w, iter};
      const MatrixXd Cw2 = working_rows(con, w);
      const VectorXd lam =
          Cw2.transpose().colPivHouseholderQr().solve(-(H * x + g));
      int worst = -1;
      double worst_val = -1e-9;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (lam(static_cast<Eigen::Index>(i)) < worst_val) {
          worst_val = lam(static_cast<Eigen::Index>(i));
          worst = static_cast<int>(i);
        }
      if (worst < 0) return {x, w, iter};
      w.erase(w.begin() + worst);
      continue;
    }

    // Ratio test against constraints outside the working set.
    double alpha = ray ? std::numeric_limits<double>::infinity() : 1.0;
    int blocking = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::find(w.begin(), w.end(), static_cast<int>(i)) != w.end())
        continue;
      const double ci_p = con.C.row(i).dot(step);
      if (ci_p <= 1e-13) continue;
      const double slack = con.d(i) - con.C.row(i).dot(x);
      const double a = std::max(slack, 0.0) / ci_p;
      if (a < alpha - 1e-15) {
        alpha = a;
        blocking = static_cast<int>(i);
      }
    }
    if (ray && blocking < 0)
      throw Error(Errc::qp_not_psd, "qp: objective unbounded below");
    x += alpha * step;
    if (blocking >= 0) w.push_back(blocking);
  }
  throw Error(Errc::qp_max_iterations, "qp: iteration cap exceeded");
}

double objective_of(const QpProblem& q, const VectorXd& x) {
  return 0.5 * x.dot(q.H * x) + q.g.dot(x);
}

}  // namespace

double qp_check_kkt(const QpProblem& q, const VectorXd& x) {
  const Constraints con = combined(q);
  const double dscale = 1.0 + (con.d.size() ? con.d.cwiseAbs().maxCoeff() : 0.0);

  double primal = 0.0;
  for (Eigen::Index i = 0; i < con.C.rows(); ++i)
    primal = std::max(primal, con.C.row(i).dot(x) - con.d(i));

  std::vector<int> act;
  for (Eigen::Index i = 0; i < con.C.rows(); ++i)
    if (std::abs(con.C.row(i).dot(x) - con.d(i)) <= 1e-7 * dscale)
      act.push_back(static_cast<int>(i));

  const VectorXd grad = q.H * x + q.g;
  double stationarity, dual = 0.0, compl_res = 0.0;
  if (act.empty()) {
    stationarity = grad.lpNorm<Eigen::Infinity>();
  } else {
    const MatrixXd Ca = working_rows(con, act);
    const VectorXd lam = Ca.transpose().colPivHouseholderQr().solve(-grad);
    stationarity =
        (grad + Ca.transpose() * lam).lpNorm<Eigen::Infinity>();
    for (std::size_t i = 0; i < act.size(); ++i) {
      const auto li = lam(static_cast<Eigen::Index>(i));
      dual = std::max(dual, -li);
      compl_res = std::max(
          compl_res, std::abs(li * (con.C.row(act[i]).dot(x) - con.d(act[i]))));
    }
  }
  return std::max({primal, dual, stationarity, compl_res});
}

QpSolution qp_solve(const QpProblem& problem) {
  QpTolerances tol;
  validate(problem, tol);
  QpProblem q = problem;
  q.H = ((problem.H + problem.H.transpose()) / 2.0).eval();

  const Constraints con = combined(q);
  const Eigen::Index p = q.H.rows();
  VectorXd x0 = VectorXd::Zero(p);
  for (Eigen::Index i = 0; i < con.d.size(); ++i)
    if (con.d(i) < -1e-12 * (1.0 + std::abs(con.d(i))))
      throw Error(Errc::qp_infeasible,
                  "qp: a = 0 is not feasible for this problem");

  ActiveSetResult res = active_set_minimize(q.H, q.g, con, x0);

  // Minimum-norm tie-break on the optimal face when H is singular.
  const double hscale = std::max(1.0, q.H.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(q.H);
  if (es.eigenvalues()(0) < kRankTol * hscale) {
    MatrixXd N0 = null_space(q.H);
    if (N0.cols() > 0) {
      const VectorXd grad = q.H * res.x + q.g;
      const VectorXd w = N0.transpose() * grad;
      MatrixXd N = N0;
      if (w.norm() > 1e-10 * (1.0 + grad.norm()))
        N = N0 * null_space(w.transpose());
      if (N.cols() > 0) {
        QpProblem face;
        face.H = 2.0 * MatrixXd::Identity(N.cols(), N.cols());
        face.g = 2.0 * (N.transpose() * res.x);
        face.A = con.C * N;
        face.b = (con.d - con.C * res.x).cwiseMax(0.0);
        face.nonneg.assign(static_cast<std::size_t>(N.cols()), false);
        const Constraints fcon = combined(face);
        ActiveSetResult fres = active_set_minimize(
            face.H, face.g, fcon, VectorXd::Zero(N.cols()));
        res.x += N * fres.x;
        res.iterations += fres.iterations;
        // Recover the active set at the final point.
        res.active.clear();
        for (Eigen::Index i = 0; i < con.C.rows(); ++i)
          if (std::abs(con.C.row(i).dot(res.x) - con.d(i)) <=
              1e-9 * (1.0 + std::abs(con.d(i))))
            res.active.push_back(static_cast<int>(i));
      }
    }
  }

  QpSolution out;
  out.a_star = res.x;
  out.active_set = res.active;
  out.iterations = res.iterations;
  out.objective = objective_of(q, res.x);
  out.multipliers = VectorXd::Zero(con.C.rows());
  if (!res.active.empty()) {
    const MatrixXd Ca = working_rows(con, res.active);
    const VectorXd lam =
        Ca.transpose().colPivHouseholderQr().solve(-(q.H * res.x + q.g));
    for (std::size_t i = 0; i < res.active.size(); ++i)
      out.multipliers(res.active[i]) =
          std::max(0.0, lam(static_cast<Eigen::Index>(i)));
  }
  out.kkt_residual = qp_check_kkt(q, res.x);
  return out;
}

}  // namespace intreg
