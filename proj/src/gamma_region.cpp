#include "gamma_region.hpp"

#include <algorithm>
#include <cmath>

namespace intreg {

namespace {
constexpr double kParallelTol = 1e-12;   // near-parallel line dedup
constexpr double kCrossTol = 1e-9;       // breakpoint acceptance
}  // namespace

double GammaG::envelope(double b) const {
  double c = inf;
  for (const Line& l : lines) c = std::min(c, -l.u * b + l.v);
  return c;
}

bool GammaG::contains(double b, double c, double tol) const {
  if (b < -tol || c < -tol) return false;
  for (const Line& l : lines)
    if (l.u * b + c > l.v + tol * (1.0 + std::abs(l.v))) return false;
  for (double bound : vertical_bounds)
    if (b > bound + tol * (1.0 + bound)) return false;
  return true;
}

bool GammaG::has_vertical_face() const {
  if (s0 == inf) return false;
  const double env = envelope(s0);
  return env > kCrossTol * (1.0 + s0);
}

GammaG build_gamma_g(const IntervalSample& x, const IntervalSample& y) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "build_gamma_g: length mismatch");
  if (x.values.empty())
    throw Error(Errc::empty_sample, "build_gamma_g: empty sample");

  GammaG g;
  std::vector<GammaG::Line> raw;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double sx = x.values[k].spr;
    const double cx = std::abs(x.values[k].mid);
    const double sy = y.values[k].spr;
    if (cx > 0.0) {
      raw.push_back({sx / cx, sy / cx, k});
    } else if (sx > 0.0) {
      g.vertical_bounds.push_back(sy / sx);
    }
    // x_k = [0 +- 0] contributes no constraint.
    if (sx > 0.0) g.s0 = std::min(g.s0, sy / sx);
  }

  // Dedup near-parallel lines keeping the smaller intercept.
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  for (const auto& l : raw) {
    if (!g.lines.empty() && std::abs(g.lines.back().u - l.u) < kParallelTol) {
      if (l.v < g.lines.back().v) g.lines.back() = l;
      continue;
    }
    g.lines.push_back(l);
  }
  for (const auto& l : g.lines) g.r0 = std::min(g.r0, l.v);

  if (g.lines.empty()) return g;  // region degenerates to a b-bound only

  // Walk the lower envelope from (0, r0) to b = s0.
  // Start line: v == r0, tie broken by the steepest slope (largest u).
  std::size_t cur = 0;
  {
    double best_v = g.r0, best_u = -1.0;
    for (std::size_t i = 0; i < g.lines.size(); ++i) {
      if (g.lines[i].v <= best_v + kCrossTol * (1.0 + std::abs(best_v)) &&
          g.lines[i].u > best_u) {
        best_u = g.lines[i].u;
        cur = i;
      }
    }
  }

  double b_cur = 0.0;
  const double b_end = g.s0;  // s0 <= every line's own root v/u
  for (std::size_t guard = 0; guard <= g.lines.size() + 1; ++guard) {
    // Next breakpoint: earliest crossing with a steeper line.
    double b_next = GammaG::inf;
    std::size_t next = g.lines.size();
    for (std::size_t k = 0; k < g.lines.size(); ++k) {
      if (g.lines[k].u <= g.lines[cur].u + kParallelTol) continue;
      const double bc = (g.lines[k].v - g.lines[cur].v) /
                        (g.lines[k].u - g.lines[cur].u);
      if (bc < b_cur - kCrossTol) continue;
      if (bc < b_next - kCrossTol) {
        b_next = bc;
        next = k;
      } else if (bc < b_next + kCrossTol && next < g.lines.size() &&
                 g.lines[k].u > g.lines[next].u) {
        next = k;  // shared breakpoint: continue with the steepest line
      }
    }
    if (next == g.lines.size() || b_next >= b_end - kCrossTol) {
      g.boundary.push_back({cur, b_cur, b_end});
      break;
    }
    g.boundary.push_back({cur, b_cur, b_next});
    b_cur = b_next;
    cur = next;
  }
  return g;
}

}  // namespace intreg
