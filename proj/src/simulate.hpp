#ifndef INTREG_SIMULATE_HPP
#define INTREG_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rng.hpp"
#include "sample.hpp"

namespace intreg {

// Scalar distribution menu of the simulation study.
struct ScalarDist {
  enum class Kind { normal, uniform, chi_square };
  Kind kind;
  double p1 = 0.0, p2 = 0.0;  // normal: (loc, sd); uniform: (lo, hi); chi2: (df, -)

  static ScalarDist normal(double loc, double sd);
  static ScalarDist uniform(double lo, double hi);
  static ScalarDist chi_square(int df);

  bool nonnegative_support() const;
  double sample(Rng& rng) const;
};

// Generator for one random interval: independent mid and spread draws.
struct DistributionSpec {
  ScalarDist mid_dist;
  ScalarDist spr_dist;  // must have nonnegative support

  DistributionSpec(ScalarDist mid, ScalarDist spr);
};

IntervalSample gen_sample(const DistributionSpec& spec, std::size_t n,
                          Rng& rng, const std::string& name = "x");

enum class StudyId { m1, m2, m3 };

StudyId study_from_string(const std::string& s);
const char* study_name(StudyId id);

// Number of predictors each study model consumes (M2 uses x1 only).
std::size_t study_arity(StudyId id);

// Assemble the response from predictors and error per the study model.
IntervalSample gen_response(StudyId id,
                            const std::vector<IntervalSample>& predictors,
                            const IntervalSample& error_sample);

struct StudyResult {
  StudyId model;
  std::size_t n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  double theta = 0.0;
  std::vector<std::string> param_names;
  std::vector<double> true_values;
  std::vector<double> means;
  std::vector<double> mses;
  // Raw estimates, row r = replicate r (skipped replicates keep NaNs).
  std::vector<std::vector<double>> estimates;
  std::vector<char> ok;  // per-replicate success flag
  int failures = 0;
};

// When `normal_second_param_is_variance` is set, N(a, b) is read with b as
// variance instead of standard deviation (comparison toggle; default off).
struct StudyOptions {
  bool parallel = false;
  bool normal_second_param_is_variance = false;
};

StudyResult run_study(StudyId id, std::size_t n, int reps, std::uint64_t seed,
                      Theta theta, const StudyOptions& opts = {});

// model,parameter,true,mean,mse,n,reps,seed rows.
void write_study_csv(const StudyResult& result, std::ostream& os);

// Per-parameter quartiles, 1.5 IQR whiskers and outliers.
void emit_boxplot_data(const StudyResult& result, std::ostream& os);

}  // namespace intreg

#endif
