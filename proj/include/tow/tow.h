/* C API for the tug-of-war-with-noise laboratory.
 *
 * Opaque handles + integer status codes. Every function that can fail
 * returns a tow_status; on failure a thread-local message is available via
 * tow_last_error(). Strings returned through char** are heap-allocated and
 * must be released with tow_string_free().
 */
#ifndef TOW_TOW_H
#define TOW_TOW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TOW_API __declspec(dllexport)
#else
#define TOW_API __attribute__((visibility("default")))
#endif

typedef enum tow_status {
  TOW_OK = 0,
  TOW_ERR_INVALID_ARG = 1,
  TOW_ERR_NUMERICAL = 2,
  TOW_ERR_VERDICT = 3,
  TOW_ERR_INTERNAL = 4
} tow_status;

typedef struct tow_params tow_params;
typedef struct tow_domain tow_domain;
typedef struct tow_field tow_field;

TOW_API const char* tow_status_name(tow_status s);
TOW_API const char* tow_last_error(void);
TOW_API void tow_string_free(char* s);

/* Game parameters: p > 2, n >= 1, eps > 0. */
TOW_API tow_status tow_params_create(double p, int n, double eps, tow_params** out);
TOW_API void tow_params_destroy(tow_params* p);
TOW_API double tow_params_alpha(const tow_params* p);
TOW_API double tow_params_beta(const tow_params* p);

/* Grid domain from a shape spec string (see CLI docs), spacing h <= eps/2. */
TOW_API tow_status tow_domain_create(const char* shape_spec, double h, double eps,
                                     tow_domain** out);
TOW_API void tow_domain_destroy(tow_domain* d);
TOW_API long tow_domain_node_count(const tow_domain* d);
TOW_API int tow_domain_dim(const tow_domain* d);

/* Solve the dynamic programming principle with boundary data from a family
 * spec string. On success *out_field holds u_eps. */
TOW_API tow_status tow_solve(const tow_domain* d, const tow_params* p,
                             const char* boundary_spec, double tolerance, long max_iters,
                             tow_field** out_field, long* out_iterations,
                             double* out_residual);
TOW_API void tow_field_destroy(tow_field* f);
TOW_API tow_status tow_field_value_at(const tow_field* f, const double* point, int dim,
                                      double* out);
TOW_API tow_status tow_field_to_json(const tow_field* f, char** out_json);

/* Run a full experiment from a JSON config ("command": solve | play |
 * cylinder | verify | sweep). Returns TOW_ERR_VERDICT when the experiment
 * ran but its verdict failed; *out_report is populated in that case too. */
TOW_API tow_status tow_run_json(const char* config_json, char** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TOW_TOW_H */
