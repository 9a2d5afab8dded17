/* C interface to the hmcf library. Every handle is opaque and owned by the
 * caller once returned; release it with the matching *_free function.
 * Functions return HMCF_OK or an error status; hmcf_last_error() holds the
 * message of the most recent failure on the calling thread. */
#ifndef HMCF_H
#define HMCF_H

#include <stddef.h>
#include <stdint.h>

#if defined(HMCF_BUILDING_LIBRARY)
#define HMCF_API __attribute__((visibility("default")))
#else
#define HMCF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hmcf_status {
  HMCF_OK = 0,
  HMCF_ERR_INVALID_ARGUMENT = 1,
  HMCF_ERR_STENCIL,
  HMCF_ERR_CONVEXITY,
  HMCF_ERR_DEGENERACY,
  HMCF_ERR_STIFFNESS,
  HMCF_ERR_GRID_MISMATCH,
  HMCF_ERR_MULTIPLE_INTERFACES,
  HMCF_ERR_OPEN_INTERFACE,
  HMCF_ERR_DOMAIN,
  HMCF_ERR_WINDOW,
  HMCF_ERR_SAMPLING,
  HMCF_ERR_ELLIPTICITY,
  HMCF_ERR_SINGULAR_JACOBIAN,
  HMCF_ERR_TRANSVERSALITY,
  HMCF_ERR_EXTINCT,
  HMCF_ERR_NON_DEGENERACY,
  HMCF_ERR_CONFIG,
  HMCF_ERR_IO,
  HMCF_ERR_INTERNAL = 100
} hmcf_status;

HMCF_API const char* hmcf_last_error(void);
/* "ok", "convexity", "config", ... */
HMCF_API const char* hmcf_status_name(hmcf_status status);

/* ---- configuration ---------------------------------------------------- */

typedef struct hmcf_config hmcf_config;

/* Parses `key = value` text. On HMCF_ERR_CONFIG the last error lists every
 * violation as "key: message" lines. `keys`/`values` (n entries, may be
 * NULL when n == 0) replace any setting of the same key in `text`. */
HMCF_API hmcf_status hmcf_config_parse(const char* text, const char* const* keys,
                                       const char* const* values, size_t n,
                                       hmcf_config** out);
HMCF_API void hmcf_config_free(hmcf_config* cfg);
HMCF_API const char* hmcf_config_kind(const hmcf_config* cfg);
HMCF_API const char* hmcf_config_out(const hmcf_config* cfg);
HMCF_API uint64_t hmcf_config_seed(const hmcf_config* cfg);

/* ---- experiments ------------------------------------------------------ */

typedef struct hmcf_report hmcf_report;

/* Returns HMCF_OK whenever a report was produced; the module outcome is in
 * the report (exit code 0 iff no module error). */
HMCF_API hmcf_status hmcf_run_experiment(const hmcf_config* cfg, hmcf_report** out);
HMCF_API int hmcf_report_exit_code(const hmcf_report* rep);
HMCF_API const char* hmcf_report_reason(const hmcf_report* rep);
HMCF_API const char* hmcf_report_message(const hmcf_report* rep);
HMCF_API const char* hmcf_report_summary_json(const hmcf_report* rep);
HMCF_API const char* hmcf_report_summary_path(const hmcf_report* rep);
HMCF_API void hmcf_report_free(hmcf_report* rep);

/* ---- height fields ---------------------------------------------------- */

typedef struct hmcf_field hmcf_field;

/* values: nx * ny entries, node (i, j) at index i * ny + j. */
HMCF_API hmcf_status hmcf_field_create(int nx, int ny, double dx, double dy, double x0,
                                       double y0, const double* values, double flat_tol,
                                       hmcf_field** out);
/* n x n grid on [-half_width, half_width]^2. */
HMCF_API hmcf_status hmcf_field_sphere(int n, double half_width, double R0, double flat_tol,
                                       hmcf_field** out);
HMCF_API hmcf_status hmcf_field_flat_disk(int n, double half_width, double r0, double q,
                                          double flat_tol, hmcf_field** out);
HMCF_API hmcf_status hmcf_field_size(const hmcf_field* f, int* nx, int* ny);
HMCF_API hmcf_status hmcf_field_values(const hmcf_field* f, double* out, size_t capacity);
HMCF_API void hmcf_field_free(hmcf_field* f);

/* Interface h = level. Writes up to `capacity` (x, y) pairs into xy and the
 * vertex count into *n_points (0 when there is no interface). */
HMCF_API hmcf_status hmcf_extract_interface(const hmcf_field* f, double level, double* xy,
                                            size_t capacity, size_t* n_points);
/* Tail-corrected flat radius; *found = 0 when there is no flat side. */
HMCF_API hmcf_status hmcf_flat_radius_estimate(const hmcf_field* f, double level, double* r,
                                               int* found);

/* ---- flow ------------------------------------------------------------- */

typedef struct hmcf_flow_params {
  double dt_safety;
  double t_end;
  double denom_eps;
  int record_every;
  double p;
  int integrator; /* 0 forward Euler, 1 RK2 */
  double clamp_tol;
  int check_initial_star;
} hmcf_flow_params;

HMCF_API void hmcf_flow_params_default(hmcf_flow_params* params);

typedef struct hmcf_trajectory hmcf_trajectory;

/* Returns the status of the run; the partial trajectory is returned in *out
 * even when a step failed. */
HMCF_API hmcf_status hmcf_flow_run(const hmcf_field* initial, const hmcf_flow_params* params,
                                   hmcf_trajectory** out);
HMCF_API size_t hmcf_trajectory_count(const hmcf_trajectory* tr);
HMCF_API hmcf_status hmcf_trajectory_time(const hmcf_trajectory* tr, size_t k, double* t);
/* Copy of snapshot k. */
HMCF_API hmcf_status hmcf_trajectory_field(const hmcf_trajectory* tr, size_t k,
                                           hmcf_field** out);
HMCF_API void hmcf_trajectory_free(hmcf_trajectory* tr);

/* ---- oracles ---------------------------------------------------------- */

HMCF_API hmcf_status hmcf_sphere_radius(double R0, double t, double* R);
HMCF_API hmcf_status hmcf_circle_csf_radius(double r0, double t, double* r);

#ifdef __cplusplus
}
#endif

#endif
