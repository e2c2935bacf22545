#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rng.hpp"
#include "sample.hpp"

using namespace intreg;

TEST_CASE("interval from endpoints") {
  const Interval a = interval_from_endpoints(63, 102);
  CHECK(a.mid == doctest::Approx(82.5));
  CHECK(a.spr == doctest::Approx(19.5));

  const Interval point = interval_from_endpoints(5, 5);
  CHECK(point.mid == 5.0);
  CHECK(point.spr == 0.0);

  CHECK_THROWS_AS(interval_from_endpoints(3, 1), Error);
  try {
    interval_from_endpoints(3, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_endpoints);
  }
}

TEST_CASE("endpoint round-trip") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double lo = rng.uniform(-50, 50);
    const double hi = lo + rng.uniform(0, 20);
    const Interval v = interval_from_endpoints(lo, hi);
    CHECK(v.inf() == doctest::Approx(lo).epsilon(1e-14));
    CHECK(v.sup() == doctest::Approx(hi).epsilon(1e-14));
    CHECK(v.spr >= 0.0);
  }
}

TEST_CASE("add_scaled") {
  const Interval a{1, 1}, b{3, 0.5};
  const Interval r = add_scaled(a, -2.0, b);
  CHECK(r.mid == doctest::Approx(-5));
  CHECK(r.spr == doctest::Approx(2));

  const Interval arb{4.2, 1.7};
  const Interval same = add_scaled(arb, 0.0, b);
  CHECK(same == arb);
  CHECK(add_scaled(Interval{0, 0}, 1.0, Interval{2, 3}) == Interval{2, 3});

  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Interval u{rng.uniform(-5, 5), rng.uniform(0, 3)};
    const Interval v{rng.uniform(-5, 5), rng.uniform(0, 3)};
    CHECK(add_scaled(u, rng.uniform(-4, 4), v).spr >= 0.0);
  }
}

TEST_CASE("hukuhara difference") {
  const Interval a = interval_from_endpoints(1, 5);
  const Interval b = interval_from_endpoints(0, 2);
  const Interval c = hukuhara_diff(a, b);
  CHECK(c.inf() == doctest::Approx(1));
  CHECK(c.sup() == doctest::Approx(3));
  // B + C = A
  const Interval back = add_scaled(b, 1.0, c);
  CHECK(back.mid == doctest::Approx(a.mid));
  CHECK(back.spr == doctest::Approx(a.spr));

  const Interval self = hukuhara_diff(a, a);
  CHECK(self.mid == 0.0);
  CHECK(self.spr == 0.0);

  CHECK_THROWS_AS(
      hukuhara_diff(interval_from_endpoints(0, 1), interval_from_endpoints(0, 4)),
      Error);

  // tolerance band: tiny negative spreads clamp to zero
  const Interval eps = hukuhara_diff(Interval{1, 1}, Interval{0, 1 + 1e-10});
  CHECK(eps.spr == 0.0);
}

TEST_CASE("hukuhara round-trip: (B + C) -_H B = C") {
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const Interval b{rng.uniform(-10, 10), rng.uniform(0, 5)};
    const Interval c{rng.uniform(-10, 10), rng.uniform(0, 5)};
    const Interval r = hukuhara_diff(add_scaled(b, 1.0, c), b);
    CHECK(r.mid == doctest::Approx(c.mid).epsilon(1e-12));
    CHECK(r.spr == doctest::Approx(c.spr).epsilon(1e-12));
  }
}

TEST_CASE("d_theta examples") {
  const Theta third(1.0 / 3.0);
  const Interval a{0, 1}, b{2, 1};
  CHECK(d_theta(a, a, third) == 0.0);
  CHECK(d_theta(a, b, third) == doctest::Approx(2.0));
  CHECK(d_theta(Interval{0, 0}, Interval{0, 3}, third) ==
        doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("d_theta metric axioms") {
  Rng rng(31);
  const Theta th(rng.uniform(0.1, 3.0));
  for (int i = 0; i < 20000; ++i) {
    const Interval a{rng.uniform(-5, 5), rng.uniform(0, 4)};
    const Interval b{rng.uniform(-5, 5), rng.uniform(0, 4)};
    const Interval c{rng.uniform(-5, 5), rng.uniform(0, 4)};
    CHECK(d_theta(a, b, th) == doctest::Approx(d_theta(b, a, th)));
    CHECK(d_theta(a, c, th) <= d_theta(a, b, th) + d_theta(b, c, th) + 1e-12);
    CHECK(d_theta(a, a, th) == 0.0);
    if (!(a == b)) CHECK(d_theta(a, b, th) > 0.0);
  }
}

TEST_CASE("canonical components") {
  IntervalSample x{{Interval{-2, 3}}, "x"};
  auto comp = canonical_components(x);
  CHECK(comp.m.values[0] == Interval{-2, 0});
  CHECK(comp.s.values[0] == Interval{0, 3});
  CHECK(comp.c.values[0] == Interval{0, 2});
  CHECK(comp.r.values[0] == Interval{3, 0});

  IntervalSample zero{{Interval{0, 0}}, "z"};
  auto zc = canonical_components(zero);
  CHECK(zc.m.values[0] == Interval{0, 0});
  CHECK(zc.s.values[0] == Interval{0, 0});
  CHECK(zc.c.values[0] == Interval{0, 0});
  CHECK(zc.r.values[0] == Interval{0, 0});

  IntervalSample point{{Interval{5, 0}}, "p"};
  auto pc = canonical_components(point);
  CHECK(pc.m.values[0] == Interval{5, 0});
  CHECK(pc.s.values[0] == Interval{0, 0});
  CHECK(pc.c.values[0] == Interval{0, 5});
  CHECK(pc.r.values[0] == Interval{0, 0});
}

TEST_CASE("canonical reconstruction x = x^M + x^S") {
  Rng rng(37);
  IntervalSample x;
  x.name = "x";
  for (int i = 0; i < 500; ++i)
    x.values.push_back(Interval{rng.uniform(-10, 10), rng.uniform(0, 6)});
  const auto comp = canonical_components(x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Interval back = add_scaled(comp.m.values[j], 1.0, comp.s.values[j]);
    CHECK(back == x.values[j]);
  }
}

TEST_CASE("sample mean") {
  IntervalSample s{{interval_from_endpoints(0, 2), interval_from_endpoints(2, 4)},
                   "s"};
  const Interval m = sample_mean(s);
  CHECK(m.inf() == doctest::Approx(1));
  CHECK(m.sup() == doctest::Approx(3));

  IntervalSample one{{Interval{4.5, 2.5}}, "one"};
  CHECK(sample_mean(one) == one.values[0]);

  IntervalSample sym{{Interval{0, 1}, Interval{0, 3}, Interval{0, 5}}, "sym"};
  CHECK(sample_mean(sym) == Interval{0, 3});

  CHECK_THROWS_AS(sample_mean(IntervalSample{}), Error);
}

TEST_CASE("sample covariance, divisor n") {
  const Theta third(1.0 / 3.0);
  IntervalSample x{{Interval{0, 0}, Interval{2, 2}}, "x"};
  CHECK(sample_cov(x, x, third) == doctest::Approx(1.0 + 1.0 / 3.0));

  IntervalSample c{{Interval{1, 1}, Interval{1, 1}, Interval{1, 1}}, "c"};
  IntervalSample y{{Interval{0, 2}, Interval{5, 1}, Interval{-3, 0}}, "y"};
  CHECK(sample_cov(c, y, third) == doctest::Approx(0.0));

  CHECK(sample_var(y, third) > 0.0);
  CHECK_THROWS_AS(sample_cov(x, y, third), Error);  // length mismatch
}

TEST_CASE("sample_cov bilinear over add_scaled (lambda >= 0)") {
  Rng rng(41);
  const Theta th(0.7);
  for (int rep = 0; rep < 50; ++rep) {
    IntervalSample x, y, z;
    for (int j = 0; j < 20; ++j) {
      x.values.push_back(Interval{rng.uniform(-3, 3), rng.uniform(0, 2)});
      y.values.push_back(Interval{rng.uniform(-3, 3), rng.uniform(0, 2)});
      z.values.push_back(Interval{rng.uniform(-3, 3), rng.uniform(0, 2)});
    }
    const double lam = rng.uniform(0, 3);
    IntervalSample xz;
    for (int j = 0; j < 20; ++j)
      xz.values.push_back(add_scaled(x.values[j], lam, z.values[j]));
    CHECK(sample_cov(xz, y, th) ==
          doctest::Approx(sample_cov(x, y, th) + lam * sample_cov(z, y, th))
              .epsilon(1e-10));
  }
}

TEST_CASE("variance nonnegativity with equality iff constant") {
  const Theta th(1.0);
  IntervalSample c{{Interval{2, 1}, Interval{2, 1}}, "c"};
  CHECK(sample_var(c, th) == 0.0);
  IntervalSample v{{Interval{2, 1}, Interval{2, 1.5}}, "v"};
  CHECK(sample_var(v, th) > 0.0);
}

TEST_CASE("theta must be positive") {
  CHECK_THROWS_AS(Theta(0.0), Error);
  CHECK_THROWS_AS(Theta(-1.0), Error);
}
