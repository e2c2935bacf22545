#include "simple_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace intreg {

namespace {

constexpr double kSingularRatio = 1e-12;

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

// Smallest/largest eigenvalue ratio test for a symmetric 2x2 matrix.
bool is_singular_2x2(double a, double b, double c) {
  const double tr = a + c;
  const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  const double lmax = (tr + disc) / 2.0;
  const double lmin = (tr - disc) / 2.0;
  return !(lmax > 0.0) || lmin < kSingularRatio * lmax;
}

// min over j with spr x_j > 0 of spr y_j / spr x_j (+inf when none).
double spread_bound(const IntervalSample& x, const IntervalSample& y) {
  double s0 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x.values[j].spr > 0.0)
      s0 = std::min(s0, y.values[j].spr / x.values[j].spr);
  return s0;
}

double fit_objective(const SimpleFit& fit, const IntervalSample& x,
                     const IntervalSample& y) {
  Theta th(fit.theta);
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    acc += d_theta_sq(y.values[j], predict(fit, x.values[j]), th);
  return acc / static_cast<double>(x.size());
}

void finalize(SimpleFit& fit, const IntervalSample& x,
              const IntervalSample& y) {
  std::vector<Interval> pred;
  pred.reserve(x.size());
  for (const Interval& v : x.values) pred.push_back(predict(fit, v));
  fit.r_squared = r_squared(pred, y, Theta(fit.theta));
  fit.objective = fit_objective(fit, x, y);
}

void check_paired(const IntervalSample& x, const IntervalSample& y,
                  std::size_t min_n) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "paired samples differ in length");
  if (x.size() < min_n)
    throw Error(Errc::empty_sample,
                "need n >= " + std::to_string(min_n) + " observations");
}

}  // namespace

SpreadObjective make_spread_objective(const IntervalSample& x,
                                      const IntervalSample& y) {
  const auto sx = spreads(x), cx = abs_mids(x), sy = spreads(y);
  return SpreadObjective{cov_of(sx, sx), cov_of(cx, cx), cov_of(sx, cx),
                         cov_of(sx, sy), cov_of(cx, sy)};
}

MgSpreadSolution solve_mg_spread(const SpreadObjective& g,
                                 const GammaG& region) {
  MgSpreadSolution s{};
  // Step 1: unconstrained minimum, nu = S2^-1 z2 (theta cancels).
  const double det = g.var_s * g.var_c - g.cov_sc * g.cov_sc;
  s.nu_b = (g.var_c * g.cov_sy - g.cov_sc * g.cov_cy) / det;
  s.nu_c = (g.var_s * g.cov_cy - g.cov_sc * g.cov_sy) / det;
  if (region.contains(s.nu_b, s.nu_c)) {
    s.interior = true;
    s.b2 = s.nu_b;
    s.b3 = s.nu_c;
    return s;
  }

  // Steps 8-10: segment minima over L2, then L1 and L3 endpoints.
  double best_g = std::numeric_limits<double>::infinity();
  auto consider = [&](double b, double c) {
    const double val = g(b, c);
    if (val < best_g) {
      best_g = val;
      s.b2 = b;
      s.b3 = c;
    }
  };

  s.cand_l2_b = 0.0;
  s.cand_l2_c = 0.0;
  double best_seg = std::numeric_limits<double>::infinity();
  for (const GammaG::Segment& seg : region.boundary) {
    const double u = region.lines[seg.line].u;
    const double v = region.lines[seg.line].v;
    const double den = g.var_s + u * u * g.var_c - 2.0 * u * g.cov_sc;
    const double num =
        u * v * g.var_c - v * g.cov_sc - u * g.cov_cy + g.cov_sy;
    const double hi = std::min(seg.b_hi, region.s0);
    const double bi = clamp(num / den, seg.b_lo, hi);
    const double ci = -u * bi + v;
    if (g(bi, ci) < best_seg) {
      best_seg = g(bi, ci);
      s.cand_l2_b = bi;
      s.cand_l2_c = ci;
    }
  }
  if (!region.boundary.empty()) consider(s.cand_l2_b, s.cand_l2_c);

  s.cand_l1_b = 0.0;
  s.cand_l1_c = clamp(g.cov_cy / g.var_c, 0.0, region.r0);
  consider(s.cand_l1_b, s.cand_l1_c);

  s.cand_l3_b = clamp(g.cov_sy / g.var_s, 0.0, region.s0);
  s.cand_l3_c = 0.0;
  consider(s.cand_l3_b, s.cand_l3_c);

  // Vertical face at b = s0 when s0 comes from a mid-zero observation; the
  // printed three-candidate enumeration misses this piece of the boundary.
  if (region.has_vertical_face()) {
    s.has_face_cand = true;
    s.cand_face_b = region.s0;
    s.cand_face_c = clamp((g.cov_cy - region.s0 * g.cov_sc) / g.var_c, 0.0,
                          region.envelope(region.s0));
    consider(s.cand_face_b, s.cand_face_c);
  }
  return s;
}

SimpleFit fit_basic(const IntervalSample& x, const IntervalSample& y,
                    Theta theta) {
  check_paired(x, y, 2);
  const auto mx = mids(x), sx = spreads(x), my = mids(y), sy = spreads(y);
  const double denom = cov_of(mx, mx) + theta.value * cov_of(sx, sx);
  if (!(denom > 0.0))
    throw Error(Errc::degenerate_regressor,
                "regressor constant in both mid and spread");
  const double cmm = cov_of(mx, my);
  const double sign = cmm < 0.0 ? -1.0 : 1.0;
  const double s0 = spread_bound(x, y);
  const double a =
      clamp((sign * cmm + theta.value * cov_of(sx, sy)) / denom, 0.0, s0);

  SimpleFit fit{};
  fit.kind = SimpleKind::basic;
  fit.theta = theta.value;
  fit.b1 = sign * a;
  fit.delta = hukuhara_diff(sample_mean(y),
                            add_scaled(Interval{}, fit.b1, sample_mean(x)));
  finalize(fit, x, y);
  return fit;
}

SimpleFit fit_model_m(const IntervalSample& x, const IntervalSample& y,
                      Theta theta) {
  check_paired(x, y, 2);
  const auto mx = mids(x), sx = spreads(x), my = mids(y), sy = spreads(y);
  const double vm = cov_of(mx, mx), vs = cov_of(sx, sx);
  if (!(vm > 0.0) || !(vs > 0.0))
    throw Error(Errc::degenerate_regressor,
                "model M needs non-degenerate mids and spreads");

  SimpleFit fit{};
  fit.kind = SimpleKind::model_m;
  fit.theta = theta.value;
  fit.b1 = cov_of(mx, my) / vm;
  fit.b2 = clamp(cov_of(sx, sy) / vs, 0.0, spread_bound(x, y));
  const Interval xbar = sample_mean(x);
  fit.delta = hukuhara_diff(
      sample_mean(y), Interval{fit.b1 * xbar.mid, fit.b2 * xbar.spr});
  finalize(fit, x, y);
  return fit;
}

SimpleFit fit_mg(const IntervalSample& x, const IntervalSample& y,
                 Theta theta) {
  check_paired(x, y, 3);
  const auto mx = mids(x), sx = spreads(x), cx = abs_mids(x);
  const auto my = mids(y);

  // Mid block: (b1, b4) = S1^-1 z1, the LS of mid y on (mid x, spr x).
  const double s11 = cov_of(mx, mx), s12 = cov_of(mx, sx),
               s22 = cov_of(sx, sx);
  if (is_singular_2x2(s11, s12, s22))
    throw Error(Errc::degenerate_regressor,
                "covariance matrix of (x^M, x^R) is singular");
  const double z1 = cov_of(mx, my), z2 = cov_of(sx, my);
  const double det1 = s11 * s22 - s12 * s12;

  SimpleFit fit{};
  fit.kind = SimpleKind::model_mg;
  fit.theta = theta.value;
  fit.b1 = (s22 * z1 - s12 * z2) / det1;
  fit.b4 = (s11 * z2 - s12 * z1) / det1;

  // Spread block: minimize g over Gamma_G by the exact boundary algorithm.
  const SpreadObjective g = make_spread_objective(x, y);
  if (is_singular_2x2(g.var_s, g.cov_sc, g.var_c))
    throw Error(Errc::degenerate_regressor,
                "covariance matrix of (x^S, x^C) is singular");
  const GammaG region = build_gamma_g(x, y);
  const MgSpreadSolution sol = solve_mg_spread(g, region);
  fit.b2 = sol.b2;
  fit.b3 = sol.b3;

  const Interval xbar = sample_mean(x);
  const double cbar = mean_of(cx);
  fit.delta = hukuhara_diff(
      sample_mean(y), Interval{fit.b1 * xbar.mid + fit.b4 * xbar.spr,
                               fit.b2 * xbar.spr + fit.b3 * cbar});
  finalize(fit, x, y);
  return fit;
}

Interval predict(const SimpleFit& fit, const Interval& x) {
  switch (fit.kind) {
    case SimpleKind::basic:
      return add_scaled(fit.delta, fit.b1, x);
    case SimpleKind::model_m:
      return Interval{fit.b1 * x.mid + fit.delta.mid,
                      fit.b2 * x.spr + fit.delta.spr};
    case SimpleKind::model_mg:
      return Interval{fit.b1 * x.mid + fit.b4 * x.spr + fit.delta.mid,
                      fit.b2 * x.spr + fit.b3 * std::abs(x.mid) +
                          fit.delta.spr};
  }
  throw Error(Errc::invalid_argument, "unknown simple model kind");
}

Residuals residuals(const SimpleFit& fit, const IntervalSample& x,
                    const IntervalSample& y) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "residuals: length mismatch");
  Residuals out;
  out.values.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    Interval fitted = predict(fit, x.values[j]);
    fitted.mid -= fit.delta.mid;
    fitted.spr -= fit.delta.spr;
    out.values.push_back(hukuhara_diff(y.values[j], fitted));
  }
  return out;
}

double r_squared(const std::vector<Interval>& predicted,
                 const IntervalSample& y, Theta theta) {
  if (predicted.size() != y.size())
    throw Error(Errc::length_mismatch, "r_squared: length mismatch");
  if (y.size() < 2)
    throw Error(Errc::empty_sample, "r_squared needs n >= 2");
  const Interval ybar = sample_mean(y);
  double sse = 0.0, sst = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    sse += d_theta_sq(y.values[j], predicted[j], theta);
    sst += d_theta_sq(y.values[j], ybar, theta);
  }
  if (!(sst > 0.0))
    throw Error(Errc::degenerate_response, "response sample is constant");
  double r2 = 1.0 - sse / sst;
  if (r2 < 0.0 && r2 > -1e-9) r2 = 0.0;
  if (r2 > 1.0 && r2 < 1.0 + 1e-9) r2 = 1.0;
  return r2;
}

}  // namespace intreg
