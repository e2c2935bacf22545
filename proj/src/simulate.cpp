#include "simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "multiple_models.hpp"
#include "simple_models.hpp"

namespace intreg {

ScalarDist ScalarDist::normal(double loc, double sd) {
  if (!(sd > 0.0))
    throw Error(Errc::invalid_argument, "normal needs sd > 0");
  return {Kind::normal, loc, sd};
}

ScalarDist ScalarDist::uniform(double lo, double hi) {
  if (!(lo < hi))
    throw Error(Errc::invalid_argument, "uniform needs lo < hi");
  return {Kind::uniform, lo, hi};
}

ScalarDist ScalarDist::chi_square(int df) {
  if (df < 1)
    throw Error(Errc::invalid_argument, "chi-square needs df >= 1");
  return {Kind::chi_square, static_cast<double>(df), 0.0};
}

bool ScalarDist::nonnegative_support() const {
  switch (kind) {
    case Kind::normal: return false;
    case Kind::uniform: return p1 >= 0.0;
    case Kind::chi_square: return true;
  }
  return false;
}

double ScalarDist::sample(Rng& rng) const {
  switch (kind) {
    case Kind::normal: return rng.normal(p1, p2);
    case Kind::uniform: return rng.uniform(p1, p2);
    case Kind::chi_square: return rng.chi_square(static_cast<int>(p1));
  }
  throw Error(Errc::invalid_argument, "unknown distribution kind");
}

DistributionSpec::DistributionSpec(ScalarDist mid, ScalarDist spr)
    : mid_dist(mid), spr_dist(spr) {
  if (!spr_dist.nonnegative_support())
    throw Error(Errc::invalid_argument,
                "spread distribution must have nonnegative support");
}

IntervalSample gen_sample(const DistributionSpec& spec, std::size_t n,
                          Rng& rng, const std::string& name) {
  IntervalSample out;
  out.name = name;
  out.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double mid = spec.mid_dist.sample(rng);
    const double spr = spec.spr_dist.sample(rng);
    out.values.push_back(Interval{mid, spr});
  }
  return out;
}

StudyId study_from_string(const std::string& s) {
  if (s == "m1") return StudyId::m1;
  if (s == "m2") return StudyId::m2;
  if (s == "m3") return StudyId::m3;
  throw Error(Errc::invalid_argument, "unknown study '" + s + "'");
}

const char* study_name(StudyId id) {
  switch (id) {
    case StudyId::m1: return "m1";
    case StudyId::m2: return "m2";
    case StudyId::m3: return "m3";
  }
  return "?";
}

std::size_t study_arity(StudyId id) { return id == StudyId::m2 ? 1 : 3; }

IntervalSample gen_response(StudyId id,
                            const std::vector<IntervalSample>& xs,
                            const IntervalSample& err) {
  if (xs.size() != study_arity(id))
    throw Error(Errc::arity_mismatch,
                std::string("study ") + study_name(id) + " needs " +
                    std::to_string(study_arity(id)) + " predictors");
  for (const auto& x : xs)
    if (x.size() != err.size())
      throw Error(Errc::length_mismatch, "gen_response: length mismatch");

  IntervalSample y;
  y.name = "y";
  y.values.reserve(err.size());
  for (std::size_t j = 0; j < err.size(); ++j) {
    Interval acc = err.values[j];
    switch (id) {
      case StudyId::m1:
        acc = add_scaled(acc, 2.0, xs[0].values[j]);
        acc = add_scaled(acc, -5.0, xs[1].values[j]);
        acc = add_scaled(acc, -1.0, xs[2].values[j]);
        break;
      case StudyId::m2: {
        const Interval& x = xs[0].values[j];
        acc = add_scaled(acc, -2.0, Interval{x.mid, 0.0});
        acc = add_scaled(acc, 2.0, Interval{0.0, x.spr});
        acc = add_scaled(acc, 1.0, Interval{0.0, std::abs(x.mid)});
        acc = add_scaled(acc, 0.5, Interval{x.spr, 0.0});
        break;
      }
      case StudyId::m3: {
        static constexpr double b1[3] = {-2.0, 5.0, -1.0};
        static constexpr double b2[3] = {2.0, 2.0, 1.0};
        static constexpr double b3[3] = {1.0, 1.0, 3.0};
        static constexpr double b4[3] = {0.5, 1.0, -3.0};
        for (int i = 0; i < 3; ++i) {
          const Interval& x = xs[static_cast<std::size_t>(i)].values[j];
          acc = add_scaled(acc, b1[i], Interval{x.mid, 0.0});
          acc = add_scaled(acc, b2[i], Interval{0.0, x.spr});
          acc = add_scaled(acc, b3[i], Interval{0.0, std::abs(x.mid)});
          acc = add_scaled(acc, b4[i], Interval{x.spr, 0.0});
        }
        break;
      }
    }
    y.values.push_back(acc);
  }
  return y;
}

namespace {

ScalarDist maybe_var(ScalarDist d, bool second_is_variance) {
  if (second_is_variance && d.kind == ScalarDist::Kind::normal)
    d.p2 = std::sqrt(d.p2);
  return d;
}

struct StudyLayout {
  std::vector<std::string> names;
  std::vector<double> truth;
};

StudyLayout layout_of(StudyId id) {
  switch (id) {
    case StudyId::m1:
      return {{"b[x1]", "b[x2]", "b[x3]"}, {2.0, -5.0, -1.0}};
    case StudyId::m2:
      return {{"b1", "b2", "b3", "b4"}, {-2.0, 2.0, 1.0, 0.5}};
    case StudyId::m3:
      return {{"b1[x1]", "b1[x2]", "b1[x3]", "b2[x1]", "b2[x2]", "b2[x3]",
               "b3[x1]", "b3[x2]", "b3[x3]", "b4[x1]", "b4[x2]", "b4[x3]"},
              {-2.0, 5.0, -1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 3.0, 0.5, 1.0, -3.0}};
  }
  throw Error(Errc::invalid_argument, "unknown study");
}

std::vector<double> one_replicate(StudyId id, std::size_t n, Rng rng,
                                  Theta theta, bool var_param) {
  const DistributionSpec dx1{maybe_var(ScalarDist::normal(1.0, 2.0), var_param),
                             ScalarDist::uniform(0.0, 10.0)};
  const DistributionSpec dx2{maybe_var(ScalarDist::normal(2.0, 1.0), var_param),
                             ScalarDist::chi_square(4)};
  const DistributionSpec dx3{maybe_var(ScalarDist::normal(1.0, 3.0), var_param),
                             ScalarDist::uniform(0.0, 5.0)};
  const DistributionSpec derr{maybe_var(ScalarDist::normal(0.0, 1.0), var_param),
                              ScalarDist::chi_square(1)};

  std::vector<IntervalSample> xs;
  xs.push_back(gen_sample(dx1, n, rng, "x1"));
  if (study_arity(id) == 3) {
    xs.push_back(gen_sample(dx2, n, rng, "x2"));
    xs.push_back(gen_sample(dx3, n, rng, "x3"));
  }
  const IntervalSample err = gen_sample(derr, n, rng, "eps");
  const IntervalSample y = gen_response(id, xs, err);

  std::vector<double> est;
  switch (id) {
    case StudyId::m1: {
      IntervalDataset ds{y, xs};
      const MultipleFit f = fit_mblrm(ds, theta);
      for (Eigen::Index i = 0; i < f.b1.size(); ++i) est.push_back(f.b1(i));
      break;
    }
    case StudyId::m2: {
      const SimpleFit f = fit_mg(xs[0], y, theta);
      est = {f.b1, f.b2, f.b3, f.b4};
      break;
    }
    case StudyId::m3: {
      IntervalDataset ds{y, xs};
      const MultipleFit f = fit_mflrm(ds, theta);
      for (Eigen::Index i = 0; i < 3; ++i) est.push_back(f.b1(i));
      for (Eigen::Index i = 0; i < 3; ++i) est.push_back(f.b2(i));
      for (Eigen::Index i = 0; i < 3; ++i) est.push_back(f.b3(i));
      for (Eigen::Index i = 0; i < 3; ++i) est.push_back(f.b4(i));
      break;
    }
  }
  return est;
}

}  // namespace

StudyResult run_study(StudyId id, std::size_t n, int reps, std::uint64_t seed,
                      Theta theta, const StudyOptions& opts) {
  if (reps < 1)
    throw Error(Errc::invalid_argument, "run_study needs reps >= 1");
  if (n < 5)
    throw Error(Errc::invalid_argument, "run_study needs n >= 5");

  const StudyLayout layout = layout_of(id);
  StudyResult res;
  res.model = id;
  res.n = n;
  res.reps = reps;
  res.seed = seed;
  res.theta = theta.value;
  res.param_names = layout.names;
  res.true_values = layout.truth;
  res.estimates.assign(
      static_cast<std::size_t>(reps),
      std::vector<double>(layout.truth.size(),
                          std::numeric_limits<double>::quiet_NaN()));
  res.ok.assign(static_cast<std::size_t>(reps), 0);

  auto worker = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      try {
        res.estimates[static_cast<std::size_t>(r)] = one_replicate(
            id, n, Rng::stream(seed, static_cast<std::uint64_t>(r)), theta,
            opts.normal_second_param_is_variance);
        res.ok[static_cast<std::size_t>(r)] = 1;
      } catch (const Error&) {
        // skip-and-count; near-degenerate draws can defeat the estimators
      }
    }
  };

  if (opts.parallel && reps > 1) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int nthreads = std::max(1, std::min(hw, reps));
    std::vector<std::thread> pool;
    const int chunk = (reps + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(worker, t * chunk, std::min(reps, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  } else {
    worker(0, reps);
  }

  for (char okflag : res.ok)
    if (!okflag) ++res.failures;
  if (res.failures * 100 > reps)
    throw Error(Errc::invalid_argument,
                "study failed: " + std::to_string(res.failures) + " of " +
                    std::to_string(reps) + " replicates raised errors");

  const std::size_t np = layout.truth.size();
  res.means.assign(np, 0.0);
  res.mses.assign(np, 0.0);
  const double cnt = static_cast<double>(reps - res.failures);
  for (int r = 0; r < reps; ++r) {
    if (!res.ok[static_cast<std::size_t>(r)]) continue;
    for (std::size_t p = 0; p < np; ++p)
      res.means[p] += res.estimates[static_cast<std::size_t>(r)][p];
  }
  for (std::size_t p = 0; p < np; ++p) res.means[p] /= cnt;
  for (int r = 0; r < reps; ++r) {
    if (!res.ok[static_cast<std::size_t>(r)]) continue;
    for (std::size_t p = 0; p < np; ++p) {
      const double d =
          res.estimates[static_cast<std::size_t>(r)][p] - layout.truth[p];
      res.mses[p] += d * d;
    }
  }
  for (std::size_t p = 0; p < np; ++p) res.mses[p] /= cnt;
  return res;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Type-7 (linear interpolation) quantile on sorted data.
double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.size() == 1) return s[0];
  const double h = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - std::floor(h)) * (s[hi] - s[lo]);
}

}  // namespace

void write_study_csv(const StudyResult& r, std::ostream& os) {
  os << "model,parameter,true,mean,mse,n,reps,seed\n";
  for (std::size_t p = 0; p < r.param_names.size(); ++p) {
    os << study_name(r.model) << ',' << r.param_names[p] << ','
       << fmt17(r.true_values[p]) << ',' << fmt17(r.means[p]) << ','
       << fmt17(r.mses[p]) << ',' << r.n << ',' << r.reps << ',' << r.seed
       << '\n';
  }
}

void emit_boxplot_data(const StudyResult& r, std::ostream& os) {
  os << "model,parameter,true,n,reps,q1,median,q3,whisker_lo,whisker_hi,"
        "outliers\n";
  for (std::size_t p = 0; p < r.param_names.size(); ++p) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(r.reps));
    for (std::size_t rep = 0; rep < r.estimates.size(); ++rep)
      if (r.ok[rep]) v.push_back(r.estimates[rep][p]);
    std::sort(v.begin(), v.end());
    const double q1 = quantile_sorted(v, 0.25);
    const double q2 = quantile_sorted(v, 0.50);
    const double q3 = quantile_sorted(v, 0.75);
    const double iqr = q3 - q1;
    const double lo_fence = q1 - 1.5 * iqr, hi_fence = q3 + 1.5 * iqr;
    double wlo = q1, whi = q3;
    for (double x : v)
      if (x >= lo_fence) { wlo = x; break; }
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (*it <= hi_fence) { whi = *it; break; }
    os << study_name(r.model) << ',' << r.param_names[p] << ','
       << fmt17(r.true_values[p]) << ',' << r.n << ',' << r.reps << ','
       << fmt17(q1) << ',' << fmt17(q2) << ',' << fmt17(q3) << ','
       << fmt17(wlo) << ',' << fmt17(whi) << ',';
    bool first = true;
    for (double x : v) {
      if (x < lo_fence || x > hi_fence) {
        if (!first) os << ';';
        os << fmt17(x);
        first = false;
      }
    }
    os << '\n';
  }
}

}  // namespace intreg
