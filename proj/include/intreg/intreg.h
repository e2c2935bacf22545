/* intreg - least-squares linear regression for interval-valued data.
 *
 * C interface to the shared library. All functions return INTREG_OK on
 * success; on failure they return an error code and leave a human-readable
 * message retrievable with intreg_last_error() (thread-local). Objects are
 * opaque handles released with the matching *_free function. Strings
 * produced by the library are released with intreg_string_free.
 */
#ifndef INTREG_INTREG_H
#define INTREG_INTREG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum intreg_status {
  INTREG_OK = 0,
  INTREG_ERR_INVALID_ENDPOINTS,
  INTREG_ERR_NO_HUKUHARA_DIFFERENCE,
  INTREG_ERR_LENGTH_MISMATCH,
  INTREG_ERR_EMPTY_SAMPLE,
  INTREG_ERR_DEGENERATE_REGRESSOR,
  INTREG_ERR_DEGENERATE_RESPONSE,
  INTREG_ERR_ARITY_MISMATCH,
  INTREG_ERR_MISSING_COLUMN,
  INTREG_ERR_PARSE,
  INTREG_ERR_IO,
  INTREG_ERR_QP_INFEASIBLE,
  INTREG_ERR_QP_MAX_ITERATIONS,
  INTREG_ERR_QP_NOT_PSD,
  INTREG_ERR_INVALID_ARGUMENT,
  INTREG_ERR_INTERNAL
} intreg_status;

typedef enum intreg_model {
  INTREG_MODEL_BASIC = 0,
  INTREG_MODEL_M,
  INTREG_MODEL_MG,
  INTREG_MODEL_MBLRM,
  INTREG_MODEL_MFLRM,
  INTREG_MODEL_MULTIPLE_M
} intreg_model;

typedef struct intreg_dataset intreg_dataset;
typedef struct intreg_fit intreg_fit;
typedef struct intreg_region intreg_region;
typedef struct intreg_study intreg_study;

const char* intreg_strerror(intreg_status status);
/* Message from the most recent failing call on this thread. */
const char* intreg_last_error(void);
void intreg_string_free(char* s);

/* ---- datasets ------------------------------------------------------- */

/* CSV with a header row; variable v occupies columns v_inf and v_sup. */
intreg_status intreg_dataset_load_csv(const char* path, const char* response,
                                      const char* const* predictors,
                                      size_t n_predictors,
                                      intreg_dataset** out);

/* Build a dataset from endpoint arrays, each of length n: response_inf/sup
 * plus n_predictors row-major arrays predictor_inf[i*n + j]. */
intreg_status intreg_dataset_from_arrays(
    const char* response_name, const double* response_inf,
    const double* response_sup, const char* const* predictor_names,
    const double* predictors_inf, const double* predictors_sup,
    size_t n_predictors, size_t n, intreg_dataset** out);

void intreg_dataset_free(intreg_dataset* ds);
size_t intreg_dataset_rows(const intreg_dataset* ds);
size_t intreg_dataset_predictors(const intreg_dataset* ds);
/* "fnv1a64:<16 hex digits>" canonical content hash. */
intreg_status intreg_dataset_fingerprint(const intreg_dataset* ds, char** out);
/* Canonical CSV serialization of the dataset. */
intreg_status intreg_dataset_to_csv(const intreg_dataset* ds, char** out);

/* ---- fitting -------------------------------------------------------- */

intreg_status intreg_fit_model(const intreg_dataset* ds, intreg_model model,
                               double theta, intreg_fit** out);
void intreg_fit_free(intreg_fit* fit);

intreg_status intreg_fit_r_squared(const intreg_fit* fit, double* out);
intreg_status intreg_fit_objective(const intreg_fit* fit, double* out);
intreg_status intreg_fit_delta(const intreg_fit* fit, double* inf, double* sup);
/* KKT residual of the QP-backed spread block; INTREG_ERR_INVALID_ARGUMENT
 * for fits without one (the simple models solve in closed form). */
intreg_status intreg_fit_kkt_residual(const intreg_fit* fit, double* out);

size_t intreg_fit_coefficients(const intreg_fit* fit);
intreg_status intreg_fit_coefficient(const intreg_fit* fit, size_t index,
                                     const char** name, double* value);

/* JSON fit report (schema 1); re-loadable with intreg_fit_from_json. */
intreg_status intreg_fit_to_json(const intreg_fit* fit, char** out);
intreg_status intreg_fit_from_json(const char* json, intreg_fit** out);

/* Predict one row of n_predictors intervals. */
intreg_status intreg_predict(const intreg_fit* fit, const double* row_inf,
                             const double* row_sup, size_t k, double* out_inf,
                             double* out_sup);

/* CSV "row,pred_inf,pred_sup[,dtheta]" for every row of the file; the
 * d_theta column appears when the response columns are present. */
intreg_status intreg_predict_csv(const intreg_fit* fit, const char* data_path,
                                 char** out);

/* CSV "row,resid_inf,resid_sup" of Hukuhara residuals on a dataset. */
intreg_status intreg_residuals_csv(const intreg_fit* fit,
                                   const intreg_dataset* ds, char** out);

/* ---- feasible region (simple flexible model) ------------------------ */

/* Requires exactly one predictor. */
intreg_status intreg_region_compute(const intreg_dataset* ds,
                                    intreg_region** out);
void intreg_region_free(intreg_region* region);
intreg_status intreg_region_bounds(const intreg_region* region, double* r0,
                                   double* s0);
/* CSV "kind,b,c": ordered boundary vertices, the candidate minima and the
 * chosen optimum. */
intreg_status intreg_region_csv(const intreg_region* region, char** out);

/* ---- simulation studies --------------------------------------------- */

/* study: "m1" (multiple basic), "m2" (simple flexible), "m3" (multiple
 * flexible). Deterministic for fixed (study, n, reps, seed, theta),
 * bit-identical with parallel on or off. */
intreg_status intreg_study_run(const char* study, size_t n, int reps,
                               uint64_t seed, double theta, int parallel,
                               intreg_study** out);
void intreg_study_free(intreg_study* study);
intreg_status intreg_study_table_csv(const intreg_study* study, char** out);
intreg_status intreg_study_boxplot_csv(const intreg_study* study, char** out);
size_t intreg_study_parameters(const intreg_study* study);
intreg_status intreg_study_parameter(const intreg_study* study, size_t index,
                                     const char** name, double* true_value,
                                     double* mean, double* mse);

#ifdef __cplusplus
}
#endif

#endif /* INTREG_INTREG_H */
