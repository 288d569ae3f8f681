/* C interface to the GMRES bounds laboratory.
 *
 * Every function returning gl_status leaves a message retrievable with
 * gl_last_error() (per thread) when it fails. Handles are opaque and must be
 * released with their matching *_free function. Strings returned through
 * char** are heap allocated; release them with gl_string_free. */
#ifndef GMRESLAB_H
#define GMRESLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(GMRESLAB_BUILDING)
#define GL_API __attribute__((visibility("default")))
#else
#define GL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gl_status {
  GL_OK = 0,
  GL_ERR_INVALID_ARGUMENT = 1,
  GL_ERR_NOT_HERMITIAN = 2,
  GL_ERR_NO_CONVERGENCE = 3,
  GL_ERR_SINGULAR_MATRIX = 4,
  GL_ERR_ZERO_VECTOR = 5,
  GL_ERR_DEGENERATE_IMAGE = 6,
  GL_ERR_BUDGET_EXCEEDED = 7,
  GL_ERR_INVALID_SPEC = 8,
  GL_ERR_FILE = 9,
  GL_ERR_PARSE = 10,
  GL_ERR_UNSUPPORTED_FORMAT = 11,
  GL_ERR_INTERNAL = 100
} gl_status;

typedef struct gl_matrix gl_matrix;
typedef struct gl_fov gl_fov;
typedef struct gl_minimax gl_minimax;
typedef struct gl_report gl_report;

GL_API const char* gl_version(void);
GL_API const char* gl_status_string(gl_status status);
/* Message for the most recent failure on this thread; "" if none. */
GL_API const char* gl_last_error(void);
GL_API void gl_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

/* Row-major real and imaginary parts; `im` may be NULL for a real matrix. */
GL_API gl_status gl_matrix_create(size_t rows, size_t cols, const double* re, const double* im, gl_matrix** out);
GL_API gl_status gl_matrix_read(const char* path, gl_matrix** out);
GL_API gl_status gl_matrix_write(const gl_matrix* m, const char* path);
/* Compact spec ("diagonal:1,2", "random_pd_part:6,1.5,1,7", ...) or a path. */
GL_API gl_status gl_matrix_generate(const char* spec, gl_matrix** out);
GL_API size_t gl_matrix_rows(const gl_matrix* m);
GL_API size_t gl_matrix_cols(const gl_matrix* m);
GL_API gl_status gl_matrix_get(const gl_matrix* m, size_t i, size_t j, double* re, double* im);
GL_API void gl_matrix_free(gl_matrix* m);

/* ---- field of values --------------------------------------------------- */

/* Distances of F(A) and F(A^-1) from the origin. nu_inverse may be NULL. */
GL_API gl_status gl_nu(const gl_matrix* a, double* nu, double* nu_inverse);
GL_API gl_status gl_fov_boundary(const gl_matrix* a, size_t samples, gl_fov** out);
GL_API size_t gl_fov_size(const gl_fov* f);
GL_API gl_status gl_fov_point(const gl_fov* f, size_t i, double* angle, double* re, double* im);
/* Columns angle, re, im, support_max, support_min. */
GL_API gl_status gl_fov_to_csv(const gl_fov* f, char** out);
GL_API void gl_fov_free(gl_fov* f);

/* ---- GMRES ------------------------------------------------------------- */

/* ratios must hold kmax + 1 values; r0_im may be NULL. */
GL_API gl_status gl_gmres_residuals(const gl_matrix* a, const double* r0_re, const double* r0_im, size_t kmax,
                                    double* ratios);

/* ---- minimax solvers --------------------------------------------------- */

typedef struct gl_solver_options {
  int starts;
  int max_iters;
  int worst_case_starts;
  double fd_step;
  int max_halvings;
  double ascent_step;
  double armijo;
  double curvature;
  int lower_bound_probes;
  uint64_t seed;
  double tolerance;
  int polish_rounds;
} gl_solver_options;

GL_API void gl_solver_options_init(gl_solver_options* o);

/* On GL_ERR_BUDGET_EXCEEDED the result is still stored in *out (not certified). */
GL_API gl_status gl_ideal_gmres(const gl_matrix* a, size_t k, const gl_solver_options* o, gl_minimax** out);
GL_API gl_status gl_worst_case_gmres(const gl_matrix* a, size_t k, const gl_solver_options* o, gl_minimax** out);
GL_API gl_status gl_one_step_ideal(const gl_matrix* a, const gl_solver_options* o, double* value, double* alpha_re,
                                   double* alpha_im);
GL_API double gl_minimax_value(const gl_minimax* r);
GL_API double gl_minimax_lower(const gl_minimax* r);
GL_API double gl_minimax_upper(const gl_minimax* r);
GL_API int gl_minimax_certified(const gl_minimax* r);
GL_API size_t gl_minimax_degree(const gl_minimax* r);
/* Coefficient of z^i, 1 <= i <= degree. */
GL_API gl_status gl_minimax_coefficient(const gl_minimax* r, size_t i, double* re, double* im);
GL_API gl_status gl_minimax_to_json(const gl_minimax* r, char** out);
GL_API void gl_minimax_free(gl_minimax* r);

/* ---- bounds ------------------------------------------------------------ */

/* *applicable is 0 (and *value untouched) when the Hermitian part is not
 * positive definite. */
GL_API gl_status gl_elman_bound(const gl_matrix* a, size_t k, double* value, int* applicable);
GL_API gl_status gl_starke_bound(const gl_matrix* a, size_t k, double* value);
GL_API gl_status gl_verify_chain(const gl_matrix* a, size_t k, size_t trials, const gl_solver_options* o,
                                 gl_report** out);
GL_API int gl_report_passed(const gl_report* r);
GL_API int gl_report_certified(const gl_report* r);
GL_API gl_status gl_report_to_json(const gl_report* r, char** out);
GL_API void gl_report_free(gl_report* r);

/* ---- experiments ------------------------------------------------------- */

/* Unset fields: NULL strings, negative numbers, has_seed == 0. */
typedef struct gl_overrides {
  const char* matrix;
  const char* depths;
  long long trials;
  int has_seed;
  uint64_t seed;
  const char* out_dir;
  int strict;
  int threads;
} gl_overrides;

GL_API void gl_overrides_init(gl_overrides* o);

/* Runs a config file. *exit_code follows the CLI convention (0 ok,
 * 1 inequality failed, 2 I/O or parse error, 3 uncertified under strict).
 * *summary (optional) receives one line per depth. */
GL_API gl_status gl_run_experiment(const char* config_path, const gl_overrides* o, int* exit_code, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* GMRESLAB_H */
