#include "intreg/intreg.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "gamma_region.hpp"
#include "io.hpp"
#include "multiple_models.hpp"
#include "simple_models.hpp"
#include "simulate.hpp"

struct intreg_dataset {
  intreg::IntervalDataset ds;
};

// A fit handle is its own report: everything the API exposes (coefficients,
// delta, prediction, residuals, JSON round-trip) is derived from it, so a
// re-loaded report behaves identically to a fresh fit.
struct intreg_fit {
  intreg::FitReport report;
};

struct intreg_region {
  intreg::GammaG region;
  bool has_candidates = false;
  intreg::MgSpreadSolution sol{};
};

struct intreg_study {
  intreg::StudyResult result;
};

namespace {

thread_local std::string g_last_error;

intreg_status map_code(intreg::Errc c) {
  using intreg::Errc;
  switch (c) {
    case Errc::ok: return INTREG_OK;
    case Errc::invalid_endpoints: return INTREG_ERR_INVALID_ENDPOINTS;
    case Errc::no_hukuhara_difference: return INTREG_ERR_NO_HUKUHARA_DIFFERENCE;
    case Errc::length_mismatch: return INTREG_ERR_LENGTH_MISMATCH;
    case Errc::empty_sample: return INTREG_ERR_EMPTY_SAMPLE;
    case Errc::degenerate_regressor: return INTREG_ERR_DEGENERATE_REGRESSOR;
    case Errc::degenerate_response: return INTREG_ERR_DEGENERATE_RESPONSE;
    case Errc::arity_mismatch: return INTREG_ERR_ARITY_MISMATCH;
    case Errc::missing_column: return INTREG_ERR_MISSING_COLUMN;
    case Errc::parse_error: return INTREG_ERR_PARSE;
    case Errc::io_error: return INTREG_ERR_IO;
    case Errc::qp_infeasible: return INTREG_ERR_QP_INFEASIBLE;
    case Errc::qp_max_iterations: return INTREG_ERR_QP_MAX_ITERATIONS;
    case Errc::qp_not_psd: return INTREG_ERR_QP_NOT_PSD;
    case Errc::invalid_argument: return INTREG_ERR_INVALID_ARGUMENT;
  }
  return INTREG_ERR_INTERNAL;
}

template <typename F>
intreg_status guarded(F&& f) {
  try {
    f();
    return INTREG_OK;
  } catch (const intreg::Error& e) {
    g_last_error = std::string(intreg::errc_name(e.code())) + ": " + e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return INTREG_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

intreg_status require(bool cond, const char* msg) {
  if (cond) return INTREG_OK;
  g_last_error = msg;
  return INTREG_ERR_INVALID_ARGUMENT;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

extern "C" {

const char* intreg_strerror(intreg_status status) {
  switch (status) {
    case INTREG_OK: return "Ok";
    case INTREG_ERR_INVALID_ENDPOINTS: return "InvalidEndpoints";
    case INTREG_ERR_NO_HUKUHARA_DIFFERENCE: return "NoHukuharaDifference";
    case INTREG_ERR_LENGTH_MISMATCH: return "LengthMismatch";
    case INTREG_ERR_EMPTY_SAMPLE: return "EmptySample";
    case INTREG_ERR_DEGENERATE_REGRESSOR: return "DegenerateRegressor";
    case INTREG_ERR_DEGENERATE_RESPONSE: return "DegenerateResponse";
    case INTREG_ERR_ARITY_MISMATCH: return "ArityMismatch";
    case INTREG_ERR_MISSING_COLUMN: return "MissingColumn";
    case INTREG_ERR_PARSE: return "ParseError";
    case INTREG_ERR_IO: return "IoError";
    case INTREG_ERR_QP_INFEASIBLE: return "Infeasible";
    case INTREG_ERR_QP_MAX_ITERATIONS: return "MaxIterations";
    case INTREG_ERR_QP_NOT_PSD: return "NotPSD";
    case INTREG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case INTREG_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* intreg_last_error(void) { return g_last_error.c_str(); }

void intreg_string_free(char* s) { std::free(s); }

intreg_status intreg_dataset_load_csv(const char* path, const char* response,
                                      const char* const* predictors,
                                      size_t n_predictors,
                                      intreg_dataset** out) {
  if (auto st = require(path && response && out && (n_predictors == 0 || predictors),
                        "null argument"))
    return st;
  return guarded([&] {
    std::vector<std::string> preds(predictors, predictors + n_predictors);
    auto ds = std::make_unique<intreg_dataset>();
    ds->ds = intreg::load_csv(path, response, preds);
    *out = ds.release();
  });
}

intreg_status intreg_dataset_from_arrays(
    const char* response_name, const double* response_inf,
    const double* response_sup, const char* const* predictor_names,
    const double* predictors_inf, const double* predictors_sup,
    size_t n_predictors, size_t n, intreg_dataset** out) {
  if (auto st = require(response_name && response_inf && response_sup && out &&
                            (n_predictors == 0 ||
                             (predictor_names && predictors_inf && predictors_sup)),
                        "null argument"))
    return st;
  return guarded([&] {
    auto ds = std::make_unique<intreg_dataset>();
    ds->ds.response.name = response_name;
    for (size_t j = 0; j < n; ++j)
      ds->ds.response.values.push_back(
          intreg::interval_from_endpoints(response_inf[j], response_sup[j]));
    for (size_t i = 0; i < n_predictors; ++i) {
      intreg::IntervalSample s;
      s.name = predictor_names[i];
      for (size_t j = 0; j < n; ++j)
        s.values.push_back(intreg::interval_from_endpoints(
            predictors_inf[i * n + j], predictors_sup[i * n + j]));
      ds->ds.predictors.push_back(std::move(s));
    }
    ds->ds.validate();
    *out = ds.release();
  });
}

void intreg_dataset_free(intreg_dataset* ds) { delete ds; }

size_t intreg_dataset_rows(const intreg_dataset* ds) {
  return ds ? ds->ds.n() : 0;
}

size_t intreg_dataset_predictors(const intreg_dataset* ds) {
  return ds ? ds->ds.k() : 0;
}

intreg_status intreg_dataset_fingerprint(const intreg_dataset* ds,
                                         char** out) {
  if (auto st = require(ds && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(intreg::dataset_fingerprint(ds->ds)); });
}

intreg_status intreg_dataset_to_csv(const intreg_dataset* ds, char** out) {
  if (auto st = require(ds && out, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    intreg::write_dataset_csv(ds->ds, os);
    *out = dup_string(os.str());
  });
}

intreg_status intreg_fit_model(const intreg_dataset* ds, intreg_model model,
                               double theta, intreg_fit** out) {
  if (auto st = require(ds && out, "null argument")) return st;
  return guarded([&] {
    intreg::Theta th(theta);
    intreg::FitReport report;
    switch (model) {
      case INTREG_MODEL_BASIC:
      case INTREG_MODEL_M:
      case INTREG_MODEL_MG: {
        if (ds->ds.k() != 1)
          throw intreg::Error(intreg::Errc::invalid_argument,
                              "simple models need exactly one predictor");
        const auto& x = ds->ds.predictors[0];
        const auto& y = ds->ds.response;
        intreg::SimpleFit fit =
            model == INTREG_MODEL_BASIC ? intreg::fit_basic(x, y, th)
            : model == INTREG_MODEL_M   ? intreg::fit_model_m(x, y, th)
                                        : intreg::fit_mg(x, y, th);
        report = intreg::make_report(fit, ds->ds);
        break;
      }
      case INTREG_MODEL_MBLRM:
        report = intreg::make_report(intreg::fit_mblrm(ds->ds, th), ds->ds);
        break;
      case INTREG_MODEL_MFLRM:
        report = intreg::make_report(intreg::fit_mflrm(ds->ds, th), ds->ds);
        break;
      case INTREG_MODEL_MULTIPLE_M:
        report = intreg::make_report(intreg::fit_multiple_m(ds->ds, th), ds->ds);
        break;
      default:
        throw intreg::Error(intreg::Errc::invalid_argument, "unknown model");
    }
    *out = new intreg_fit{std::move(report)};
  });
}

void intreg_fit_free(intreg_fit* fit) { delete fit; }

intreg_status intreg_fit_r_squared(const intreg_fit* fit, double* out) {
  if (auto st = require(fit && out, "null argument")) return st;
  *out = fit->report.r_squared;
  return INTREG_OK;
}

intreg_status intreg_fit_objective(const intreg_fit* fit, double* out) {
  if (auto st = require(fit && out, "null argument")) return st;
  *out = fit->report.objective;
  return INTREG_OK;
}

intreg_status intreg_fit_delta(const intreg_fit* fit, double* inf,
                               double* sup) {
  if (auto st = require(fit && inf && sup, "null argument")) return st;
  *inf = fit->report.delta.inf();
  *sup = fit->report.delta.sup();
  return INTREG_OK;
}

intreg_status intreg_fit_kkt_residual(const intreg_fit* fit, double* out) {
  if (auto st = require(fit && out, "null argument")) return st;
  if (!fit->report.kkt_residual)
    return require(false, "fit has no KKT-backed block");
  *out = *fit->report.kkt_residual;
  return INTREG_OK;
}

size_t intreg_fit_coefficients(const intreg_fit* fit) {
  return fit ? fit->report.coefficients.size() : 0;
}

intreg_status intreg_fit_coefficient(const intreg_fit* fit, size_t index,
                                     const char** name, double* value) {
  if (auto st = require(fit && name && value, "null argument")) return st;
  if (auto st = require(index < fit->report.coefficients.size(),
                        "coefficient index out of range"))
    return st;
  *name = fit->report.coefficients[index].first.c_str();
  *value = fit->report.coefficients[index].second;
  return INTREG_OK;
}

intreg_status intreg_fit_to_json(const intreg_fit* fit, char** out) {
  if (auto st = require(fit && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(intreg::report_to_json(fit->report)); });
}

intreg_status intreg_fit_from_json(const char* json, intreg_fit** out) {
  if (auto st = require(json && out, "null argument")) return st;
  return guarded([&] {
    *out = new intreg_fit{intreg::report_from_json(json)};
  });
}

intreg_status intreg_predict(const intreg_fit* fit, const double* row_inf,
                             const double* row_sup, size_t k, double* out_inf,
                             double* out_sup) {
  if (auto st = require(fit && row_inf && row_sup && out_inf && out_sup,
                        "null argument"))
    return st;
  return guarded([&] {
    std::vector<intreg::Interval> row;
    for (size_t i = 0; i < k; ++i)
      row.push_back(intreg::interval_from_endpoints(row_inf[i], row_sup[i]));
    const intreg::Interval y = intreg::report_predict(fit->report, row);
    *out_inf = y.inf();
    *out_sup = y.sup();
  });
}

intreg_status intreg_predict_csv(const intreg_fit* fit, const char* data_path,
                                 char** out) {
  if (auto st = require(fit && data_path && out, "null argument")) return st;
  return guarded([&] {
    bool has_response = false;
    const intreg::IntervalDataset ds = intreg::load_csv_flexible(
        data_path, fit->report.response, fit->report.predictors,
        &has_response);
    std::ostringstream os;
    os << "row,pred_inf,pred_sup";
    if (has_response) os << ",dtheta";
    os << '\n';
    const std::size_t n =
        ds.predictors.empty() ? 0 : ds.predictors[0].size();
    std::vector<intreg::Interval> row(ds.k());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < ds.k(); ++i)
        row[i] = ds.predictors[i].values[j];
      const intreg::Interval y = intreg::report_predict(fit->report, row);
      os << (j + 1) << ',' << fmt17(y.inf()) << ',' << fmt17(y.sup());
      if (has_response)
        os << ','
           << fmt17(intreg::d_theta(ds.response.values[j], y,
                                    intreg::Theta(fit->report.theta)));
      os << '\n';
    }
    *out = dup_string(os.str());
  });
}

intreg_status intreg_residuals_csv(const intreg_fit* fit,
                                   const intreg_dataset* ds, char** out) {
  if (auto st = require(fit && ds && out, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    os << "row,resid_inf,resid_sup\n";
    std::vector<intreg::Interval> row(ds->ds.k());
    for (std::size_t j = 0; j < ds->ds.n(); ++j) {
      for (std::size_t i = 0; i < ds->ds.k(); ++i)
        row[i] = ds->ds.predictors[i].values[j];
      intreg::Interval fitted = intreg::report_predict(fit->report, row);
      fitted.mid -= fit->report.delta.mid;
      fitted.spr -= fit->report.delta.spr;
      const intreg::Interval eps =
          intreg::hukuhara_diff(ds->ds.response.values[j], fitted);
      os << (j + 1) << ',' << fmt17(eps.inf()) << ',' << fmt17(eps.sup())
         << '\n';
    }
    *out = dup_string(os.str());
  });
}

intreg_status intreg_region_compute(const intreg_dataset* ds,
                                    intreg_region** out) {
  if (auto st = require(ds && out, "null argument")) return st;
  return guarded([&] {
    if (ds->ds.k() != 1)
      throw intreg::Error(intreg::Errc::invalid_argument,
                          "the feasible region is defined for one predictor");
    auto r = std::make_unique<intreg_region>();
    const auto& x = ds->ds.predictors[0];
    const auto& y = ds->ds.response;
    r->region = intreg::build_gamma_g(x, y);
    const intreg::SpreadObjective g = intreg::make_spread_objective(x, y);
    const double det = g.var_s * g.var_c - g.cov_sc * g.cov_sc;
    const double scale = std::max({g.var_s, g.var_c, 1e-300});
    if (det > 1e-12 * scale * scale) {
      r->sol = intreg::solve_mg_spread(g, r->region);
      r->has_candidates = true;
    }
    *out = r.release();
  });
}

void intreg_region_free(intreg_region* region) { delete region; }

intreg_status intreg_region_bounds(const intreg_region* region, double* r0,
                                   double* s0) {
  if (auto st = require(region && r0 && s0, "null argument")) return st;
  *r0 = region->region.r0;
  *s0 = region->region.s0;
  return INTREG_OK;
}

intreg_status intreg_region_csv(const intreg_region* region, char** out) {
  if (auto st = require(region && out, "null argument")) return st;
  return guarded([&] {
    const intreg::GammaG& g = region->region;
    std::ostringstream os;
    os << "kind,b,c\n";
    auto put = [&](const char* kind, double b, double c) {
      os << kind << ',' << fmt17(b) << ',' << fmt17(c) << '\n';
    };
    if (!g.lines.empty()) {
      put("vertex", 0.0, g.r0);
      for (const auto& seg : g.boundary) {
        const double c_end = -g.lines[seg.line].u * seg.b_hi +
                             g.lines[seg.line].v;
        put("vertex", seg.b_hi, std::max(c_end, 0.0));
      }
      const auto& last = g.boundary.back();
      const double c_last =
          -g.lines[last.line].u * last.b_hi + g.lines[last.line].v;
      if (c_last > 1e-12 * (1.0 + g.r0)) put("vertex", last.b_hi, 0.0);
    } else if (g.s0 != intreg::GammaG::inf) {
      put("vertex", g.s0, 0.0);
    }
    if (region->has_candidates) {
      const auto& s = region->sol;
      put("unconstrained_min", s.nu_b, s.nu_c);
      if (!s.interior) {
        put("candidate_l1", s.cand_l1_b, s.cand_l1_c);
        put("candidate_l2", s.cand_l2_b, s.cand_l2_c);
        put("candidate_l3", s.cand_l3_b, s.cand_l3_c);
        if (s.has_face_cand)
          put("candidate_face", s.cand_face_b, s.cand_face_c);
      }
      put("optimum", s.b2, s.b3);
    }
    *out = dup_string(os.str());
  });
}

intreg_status intreg_study_run(const char* study, size_t n, int reps,
                               uint64_t seed, double theta, int parallel,
                               intreg_study** out) {
  if (auto st = require(study && out, "null argument")) return st;
  return guarded([&] {
    intreg::StudyOptions opts;
    opts.parallel = parallel != 0;
    auto s = std::make_unique<intreg_study>();
    s->result = intreg::run_study(intreg::study_from_string(study), n, reps,
                                  seed, intreg::Theta(theta), opts);
    *out = s.release();
  });
}

void intreg_study_free(intreg_study* study) { delete study; }

intreg_status intreg_study_table_csv(const intreg_study* study, char** out) {
  if (auto st = require(study && out, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    intreg::write_study_csv(study->result, os);
    *out = dup_string(os.str());
  });
}

intreg_status intreg_study_boxplot_csv(const intreg_study* study, char** out) {
  if (auto st = require(study && out, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    intreg::emit_boxplot_data(study->result, os);
    *out = dup_string(os.str());
  });
}

size_t intreg_study_parameters(const intreg_study* study) {
  return study ? study->result.param_names.size() : 0;
}

intreg_status intreg_study_parameter(const intreg_study* study, size_t index,
                                     const char** name, double* true_value,
                                     double* mean, double* mse) {
  if (auto st = require(study && name && true_value && mean && mse,
                        "null argument"))
    return st;
  if (auto st = require(index < study->result.param_names.size(),
                        "parameter index out of range"))
    return st;
  *name = study->result.param_names[index].c_str();
  *true_value = study->result.true_values[index];
  *mean = study->result.means[index];
  *mse = study->result.mses[index];
  return INTREG_OK;
}

}  // extern "C"
