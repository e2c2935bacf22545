#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gamma_region.hpp"
#include "io.hpp"
#include "rng.hpp"

using namespace intreg;

namespace {
IntervalSample make(std::initializer_list<Interval> vs, const char* name) {
  return IntervalSample{vs, name};
}
}  // namespace

TEST_CASE("single observation region") {
  // x = [1 +- 1], y = [0 +- 2]: one line c = -b + 2, r0 = 2, s0 = 2.
  const auto g = build_gamma_g(make({Interval{1, 1}}, "x"),
                               make({Interval{0, 2}}, "y"));
  CHECK(g.r0 == doctest::Approx(2.0));
  CHECK(g.s0 == doctest::Approx(2.0));
  REQUIRE(g.lines.size() == 1);
  CHECK(g.lines[0].u == doctest::Approx(1.0));
  CHECK(g.lines[0].v == doctest::Approx(2.0));
  REQUIRE(g.boundary.size() == 1);
  CHECK(g.boundary[0].b_lo == doctest::Approx(0.0));
  CHECK(g.boundary[0].b_hi == doctest::Approx(2.0));
  CHECK(g.contains(1.0, 0.5));
  CHECK_FALSE(g.contains(1.0, 1.5));
}

TEST_CASE("all mid x zero: no lines, only the b bound") {
  const auto g = build_gamma_g(make({Interval{0, 1}, Interval{0, 2}}, "x"),
                               make({Interval{5, 3}, Interval{1, 2}}, "y"));
  CHECK(g.lines.empty());
  CHECK(g.boundary.empty());
  CHECK(g.r0 == GammaG::inf);
  CHECK(g.s0 == doctest::Approx(1.0));  // min(3/1, 2/2)
  CHECK(g.contains(0.9, 1e6));          // c unconstrained by lines
  CHECK_FALSE(g.contains(1.1, 0.0));
}

TEST_CASE("x = [0 +- 0] contributes no constraint") {
  const auto g = build_gamma_g(
      make({Interval{0, 0}, Interval{1, 1}}, "x"),
      make({Interval{7, 0.1}, Interval{0, 2}}, "y"));
  CHECK(g.lines.size() == 1);  // only the second row
  CHECK(g.s0 == doctest::Approx(2.0));
  CHECK(g.vertical_bounds.empty());
}

TEST_CASE("vertical bound can cut the region before any line root") {
  // Row 1 gives the line c = -b + 10; row 2 (mid = 0) forces b <= 0.5.
  const auto g = build_gamma_g(
      make({Interval{1, 1}, Interval{0, 2}}, "x"),
      make({Interval{0, 10}, Interval{0, 1}}, "y"));
  CHECK(g.s0 == doctest::Approx(0.5));
  CHECK(g.r0 == doctest::Approx(10.0));
  CHECK(g.has_vertical_face());
  CHECK(g.envelope(g.s0) == doctest::Approx(9.5));
  REQUIRE(g.boundary.size() == 1);
  CHECK(g.boundary[0].b_hi == doctest::Approx(0.5));
}

TEST_CASE("hospital region matches the envelope definition") {
  const IntervalDataset ds =
      load_csv(std::string(INTREG_DATA_DIR) + "/hospital.csv", "y", {"x1"});
  const auto g = build_gamma_g(ds.predictors[0], ds.response);
  CHECK(g.r0 == doctest::Approx(0.0991957104557641).epsilon(1e-12));
  CHECK(g.s0 == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  REQUIRE(g.boundary.size() == 2);
  CHECK(g.boundary[0].b_hi == doctest::Approx(0.024212).epsilon(1e-3));

  // Envelope correctness: breakpoints satisfy both adjacent lines; between
  // breakpoints the active line attains the pointwise minimum.
  for (std::size_t i = 0; i + 1 < g.boundary.size(); ++i) {
    const auto& l1 = g.lines[g.boundary[i].line];
    const auto& l2 = g.lines[g.boundary[i + 1].line];
    const double bb = g.boundary[i].b_hi;
    CHECK(-l1.u * bb + l1.v == doctest::Approx(-l2.u * bb + l2.v).epsilon(1e-9));
  }
  for (const auto& seg : g.boundary) {
    const auto& l = g.lines[seg.line];
    for (int t = 0; t <= 10; ++t) {
      const double b = seg.b_lo + (seg.b_hi - seg.b_lo) * t / 10.0;
      const double c_line = -l.u * b + l.v;
      CHECK(c_line == doctest::Approx(g.envelope(b)).epsilon(1e-9));
    }
  }

  // Every sampled boundary point is feasible and tight on >= 1 constraint.
  for (const auto& seg : g.boundary) {
    for (int t = 1; t < 10; ++t) {
      const double b = seg.b_lo + (seg.b_hi - seg.b_lo) * t / 10.0;
      const double c = g.envelope(b);
      CHECK(g.contains(b, c, 1e-9));
      bool tight = false;
      for (std::size_t j = 0; j < ds.n(); ++j) {
        const double lhs = b * ds.predictors[0].values[j].spr +
                           c * std::abs(ds.predictors[0].values[j].mid);
        CHECK(lhs <= ds.response.values[j].spr + 1e-9);
        if (std::abs(lhs - ds.response.values[j].spr) < 1e-9) tight = true;
      }
      CHECK(tight);
    }
  }
}

TEST_CASE("random regions: boundary partitions [0, s0] and stays feasible") {
  Rng rng(101);
  for (int rep = 0; rep < 100; ++rep) {
    IntervalSample x, y;
    const int n = 2 + static_cast<int>(rng.next_u64() % 15);
    for (int j = 0; j < n; ++j) {
      x.values.push_back(Interval{rng.uniform(-4, 4), rng.uniform(0.1, 3)});
      y.values.push_back(Interval{rng.uniform(-4, 4), rng.uniform(0.3, 4)});
    }
    const auto g = build_gamma_g(x, y);
    REQUIRE(!g.boundary.empty());
    CHECK(g.boundary.front().b_lo == doctest::Approx(0.0));
    CHECK(g.boundary.back().b_hi == doctest::Approx(g.s0));
    for (std::size_t i = 0; i + 1 < g.boundary.size(); ++i) {
      CHECK(g.boundary[i].b_hi == doctest::Approx(g.boundary[i + 1].b_lo));
      // Slopes steepen along the walk.
      CHECK(g.lines[g.boundary[i].line].u <
            g.lines[g.boundary[i + 1].line].u + 1e-12);
    }
    for (const auto& seg : g.boundary) {
      const auto& l = g.lines[seg.line];
      for (int t = 0; t <= 6; ++t) {
        const double b = seg.b_lo + (seg.b_hi - seg.b_lo) * t / 6.0;
        CHECK(-l.u * b + l.v == doctest::Approx(g.envelope(b)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("(0,0) is always feasible") {
  Rng rng(202);
  for (int rep = 0; rep < 200; ++rep) {
    IntervalSample x, y;
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    for (int j = 0; j < n; ++j) {
      x.values.push_back(Interval{rng.uniform(-2, 2), rng.uniform(0, 2)});
      y.values.push_back(Interval{rng.uniform(-2, 2), rng.uniform(0, 2)});
    }
    bool any = false;
    for (const auto& v : x.values)
      if (v.spr > 0 || std::abs(v.mid) > 0) any = true;
    if (!any) continue;
    CHECK(build_gamma_g(x, y).contains(0.0, 0.0));
  }
}
