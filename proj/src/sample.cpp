#include "sample.hpp"

#include <cmath>

namespace intreg {

CanonicalComponents canonical_components(const IntervalSample& x) {
  CanonicalComponents out;
  out.m.name = x.name + "^M";
  out.s.name = x.name + "^S";
  out.c.name = x.name + "^C";
  out.r.name = x.name + "^R";
  out.m.values.reserve(x.size());
  out.s.values.reserve(x.size());
  out.c.values.reserve(x.size());
  out.r.values.reserve(x.size());
  for (const Interval& v : x.values) {
    out.m.values.push_back(Interval{v.mid, 0.0});
    out.s.values.push_back(Interval{0.0, v.spr});
    out.c.values.push_back(Interval{0.0, std::abs(v.mid)});
    out.r.values.push_back(Interval{v.spr, 0.0});
  }
  return out;
}

Interval sample_mean(const IntervalSample& x) {
  if (x.values.empty())
    throw Error(Errc::empty_sample, "sample_mean of empty sample");
  double m = 0.0, s = 0.0;
  for (const Interval& v : x.values) {
    m += v.mid;
    s += v.spr;
  }
  const double n = static_cast<double>(x.size());
  return Interval{m / n, s / n};
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double cov_of(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a), mb = mean_of(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += (a[i] - ma) * (b[i] - mb);
  return acc / static_cast<double>(a.size());
}

double sample_cov(const IntervalSample& x, const IntervalSample& y,
                  Theta theta) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch, "sample_cov: length mismatch " +
                                           std::to_string(x.size()) + " vs " +
                                           std::to_string(y.size()));
  if (x.size() < 2)
    throw Error(Errc::empty_sample, "sample_cov needs n >= 2");
  return cov_of(mids(x), mids(y)) +
         theta.value * cov_of(spreads(x), spreads(y));
}

double sample_var(const IntervalSample& x, Theta theta) {
  return sample_cov(x, x, theta);
}

std::vector<double> mids(const IntervalSample& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const Interval& v : x.values) out.push_back(v.mid);
  return out;
}

std::vector<double> spreads(const IntervalSample& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const Interval& v : x.values) out.push_back(v.spr);
  return out;
}

std::vector<double> abs_mids(const IntervalSample& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const Interval& v : x.values) out.push_back(std::abs(v.mid));
  return out;
}

}  // namespace intreg
