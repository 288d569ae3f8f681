#include <cstdlib>
#include <cstring>
#include <string>

#include "format.hpp"
#include "gmreslab/bounds.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/experiment.hpp"
#include "gmreslab/fov.hpp"
#include "gmreslab/generate.hpp"
#include "gmreslab/gmreslab.h"
#include "gmreslab/krylov.hpp"
#include "gmreslab/matrix_market.hpp"
#include "gmreslab/minimax.hpp"
#include "gmreslab/report_io.hpp"

using namespace gmreslab;

struct gl_matrix {
  Matrix m;
};
struct gl_fov {
  FovBoundary b;
};
struct gl_minimax {
  MinimaxResult r;
};
struct gl_report {
  BoundsReport r;
};

namespace {

thread_local std::string last_error;

gl_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return GL_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotHermitian: return GL_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return GL_ERR_NO_CONVERGENCE;
    case ErrorCode::SingularMatrix: return GL_ERR_SINGULAR_MATRIX;
    case ErrorCode::ZeroVector: return GL_ERR_ZERO_VECTOR;
    case ErrorCode::DegenerateImage: return GL_ERR_DEGENERATE_IMAGE;
    case ErrorCode::BudgetExceeded: return GL_ERR_BUDGET_EXCEEDED;
    case ErrorCode::InvalidSpec: return GL_ERR_INVALID_SPEC;
    case ErrorCode::FileError: return GL_ERR_FILE;
    case ErrorCode::ParseError: return GL_ERR_PARSE;
    case ErrorCode::UnsupportedFormat: return GL_ERR_UNSUPPORTED_FORMAT;
  }
  return GL_ERR_INTERNAL;
}

gl_status fail(gl_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
gl_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const LabError& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GL_ERR_INTERNAL, e.what());
  }
}

gl_status null_arg(const char* fn) { return fail(GL_ERR_INVALID_ARGUMENT, std::string(fn) + ": null argument"); }

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

SolverOptions to_options(const gl_solver_options* o) {
  SolverOptions s;
  if (!o) return s;
  s.starts = o->starts;
  s.max_iters = o->max_iters;
  s.worst_case_starts = o->worst_case_starts;
  s.fd_step = o->fd_step;
  s.max_halvings = o->max_halvings;
  s.ascent_step = o->ascent_step;
  s.armijo = o->armijo;
  s.curvature = o->curvature;
  s.lower_bound_probes = o->lower_bound_probes;
  s.seed = o->seed;
  s.tolerance = o->tolerance;
  s.polish_rounds = o->polish_rounds;
  return s;
}

std::string minimax_json(const MinimaxResult& r) {
  std::string s = "{\"value\": " + json_real(r.value) + ", \"lower_bound\": " + json_real(r.lower_bound) +
                  ", \"upper_bound\": " + json_real(r.upper_bound) +
                  ", \"certified\": " + (r.certified ? "true" : "false") +
                  ", \"starts_used\": " + std::to_string(r.starts_used) + ", \"coefficients\": ";
  if (r.coefficients) {
    s += "[";
    for (std::size_t i = 0; i < r.coefficients->coeffs.size(); ++i)
      s += (i ? ", " : "") + json_complex(r.coefficients->coeffs[i]);
    s += "]";
  } else {
    s += "null";
  }
  s += ", \"witness\": [";
  for (std::size_t i = 0; i < r.witness_vector.size(); ++i)
    s += (i ? ", " : "") + json_complex(r.witness_vector[i]);
  return s + "]}";
}

}  // namespace

extern "C" {

const char* gl_version(void) { return "0.1.0"; }

const char* gl_status_string(gl_status status) {
  switch (status) {
    case GL_OK: return "ok";
    case GL_ERR_INTERNAL: return "internal error";
    default: return to_string(static_cast<ErrorCode>(status));
  }
}

const char* gl_last_error(void) { return last_error.c_str(); }

void gl_string_free(char* s) { std::free(s); }

gl_status gl_matrix_create(size_t rows, size_t cols, const double* re, const double* im, gl_matrix** out) {
  if (!re || !out) return null_arg("gl_matrix_create");
  if (rows == 0 || cols == 0) return fail(GL_ERR_INVALID_ARGUMENT, "gl_matrix_create: empty shape");
  return guarded([&] {
    auto h = new gl_matrix{Matrix(rows, cols)};
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) h->m(i, j) = {re[i * cols + j], im ? im[i * cols + j] : 0.0};
    *out = h;
    return GL_OK;
  });
}

gl_status gl_matrix_read(const char* path, gl_matrix** out) {
  if (!path || !out) return null_arg("gl_matrix_read");
  return guarded([&] {
    *out = new gl_matrix{read_matrix_market(path)};
    return GL_OK;
  });
}

gl_status gl_matrix_write(const gl_matrix* m, const char* path) {
  if (!m || !path) return null_arg("gl_matrix_write");
  return guarded([&] {
    write_matrix_market(path, m->m);
    return GL_OK;
  });
}

gl_status gl_matrix_generate(const char* spec, gl_matrix** out) {
  if (!spec || !out) return null_arg("gl_matrix_generate");
  return guarded([&] {
    *out = new gl_matrix{generate_matrix(parse_matrix_spec(spec))};
    return GL_OK;
  });
}

size_t gl_matrix_rows(const gl_matrix* m) { return m ? m->m.rows() : 0; }
size_t gl_matrix_cols(const gl_matrix* m) { return m ? m->m.cols() : 0; }

gl_status gl_matrix_get(const gl_matrix* m, size_t i, size_t j, double* re, double* im) {
  if (!m) return null_arg("gl_matrix_get");
  if (i >= m->m.rows() || j >= m->m.cols()) return fail(GL_ERR_INVALID_ARGUMENT, "gl_matrix_get: index out of range");
  if (re) *re = m->m(i, j).real();
  if (im) *im = m->m(i, j).imag();
  return GL_OK;
}

void gl_matrix_free(gl_matrix* m) { delete m; }

gl_status gl_nu(const gl_matrix* a, double* nu, double* nu_inverse) {
  if (!a || !nu) return null_arg("gl_nu");
  return guarded([&] {
    const double v = nu_fov(a->m).nu;
    if (nu_inverse) *nu_inverse = nu_fov_inverse(a->m);
    *nu = v;
    return GL_OK;
  });
}

gl_status gl_fov_boundary(const gl_matrix* a, size_t samples, gl_fov** out) {
  if (!a || !out) return null_arg("gl_fov_boundary");
  return guarded([&] {
    *out = new gl_fov{fov_boundary(a->m, samples)};
    return GL_OK;
  });
}

size_t gl_fov_size(const gl_fov* f) { return f ? f->b.points.size() : 0; }

gl_status gl_fov_point(const gl_fov* f, size_t i, double* angle, double* re, double* im) {
  if (!f) return null_arg("gl_fov_point");
  if (i >= f->b.points.size()) return fail(GL_ERR_INVALID_ARGUMENT, "gl_fov_point: index out of range");
  if (angle) *angle = f->b.angles[i];
  if (re) *re = f->b.points[i].real();
  if (im) *im = f->b.points[i].imag();
  return GL_OK;
}

gl_status gl_fov_to_csv(const gl_fov* f, char** out) {
  if (!f || !out) return null_arg("gl_fov_to_csv");
  return guarded([&] {
    *out = dup(fov_boundary_csv(f->b));
    return GL_OK;
  });
}

void gl_fov_free(gl_fov* f) { delete f; }

gl_status gl_gmres_residuals(const gl_matrix* a, const double* r0_re, const double* r0_im, size_t kmax,
                             double* ratios) {
  if (!a || !r0_re || !ratios) return null_arg("gl_gmres_residuals");
  return guarded([&] {
    CVector r0(a->m.rows());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = {r0_re[i], r0_im ? r0_im[i] : 0.0};
    const auto curve = gmres_residuals(a->m, r0, kmax);
    std::copy(curve.ratios.begin(), curve.ratios.end(), ratios);
    return GL_OK;
  });
}

void gl_solver_options_init(gl_solver_options* o) {
  if (!o) return;
  const SolverOptions s;
  o->starts = s.starts;
  o->max_iters = s.max_iters;
  o->worst_case_starts = s.worst_case_starts;
  o->fd_step = s.fd_step;
  o->max_halvings = s.max_halvings;
  o->ascent_step = s.ascent_step;
  o->armijo = s.armijo;
  o->curvature = s.curvature;
  o->lower_bound_probes = s.lower_bound_probes;
  o->seed = s.seed;
  o->tolerance = s.tolerance;
  o->polish_rounds = s.polish_rounds;
}

gl_status gl_ideal_gmres(const gl_matrix* a, size_t k, const gl_solver_options* o, gl_minimax** out) {
  if (!a || !out) return null_arg("gl_ideal_gmres");
  return guarded([&] {
    auto h = new gl_minimax{ideal_gmres(a->m, k, to_options(o))};
    *out = h;
    if (!h->r.certified)
      return fail(GL_ERR_BUDGET_EXCEEDED, "ideal GMRES bracket " + json_real(h->r.gap()) + " exceeds the tolerance");
    return GL_OK;
  });
}

gl_status gl_worst_case_gmres(const gl_matrix* a, size_t k, const gl_solver_options* o, gl_minimax** out) {
  if (!a || !out) return null_arg("gl_worst_case_gmres");
  return guarded([&] {
    *out = new gl_minimax{worst_case_gmres(a->m, k, to_options(o))};
    return GL_OK;
  });
}

gl_status gl_one_step_ideal(const gl_matrix* a, const gl_solver_options* o, double* value, double* alpha_re,
                            double* alpha_im) {
  if (!a || !value) return null_arg("gl_one_step_ideal");
  return guarded([&] {
    const auto r = one_step_ideal(a->m, to_options(o));
    *value = r.value;
    if (alpha_re) *alpha_re = r.alpha.real();
    if (alpha_im) *alpha_im = r.alpha.imag();
    return GL_OK;
  });
}

double gl_minimax_value(const gl_minimax* r) { return r ? r->r.value : 0.0; }
double gl_minimax_lower(const gl_minimax* r) { return r ? r->r.lower_bound : 0.0; }
double gl_minimax_upper(const gl_minimax* r) { return r ? r->r.upper_bound : 0.0; }
int gl_minimax_certified(const gl_minimax* r) { return r && r->r.certified ? 1 : 0; }
size_t gl_minimax_degree(const gl_minimax* r) { return r && r->r.coefficients ? r->r.coefficients->degree() : 0; }

gl_status gl_minimax_coefficient(const gl_minimax* r, size_t i, double* re, double* im) {
  if (!r) return null_arg("gl_minimax_coefficient");
  if (!r->r.coefficients || i < 1 || i > r->r.coefficients->degree())
    return fail(GL_ERR_INVALID_ARGUMENT, "gl_minimax_coefficient: index out of range");
  const cplx c = r->r.coefficients->coeffs[i - 1];
  if (re) *re = c.real();
  if (im) *im = c.imag();
  return GL_OK;
}

gl_status gl_minimax_to_json(const gl_minimax* r, char** out) {
  if (!r || !out) return null_arg("gl_minimax_to_json");
  return guarded([&] {
    *out = dup(minimax_json(r->r));
    return GL_OK;
  });
}

void gl_minimax_free(gl_minimax* r) { delete r; }

gl_status gl_elman_bound(const gl_matrix* a, size_t k, double* value, int* applicable) {
  if (!a || !value || !applicable) return null_arg("gl_elman_bound");
  return guarded([&] {
    const auto v = elman_bound(a->m, k);
    *applicable = v ? 1 : 0;
    if (v) *value = *v;
    return GL_OK;
  });
}

gl_status gl_starke_bound(const gl_matrix* a, size_t k, double* value) {
  if (!a || !value) return null_arg("gl_starke_bound");
  return guarded([&] {
    *value = starke_bound(a->m, k);
    return GL_OK;
  });
}

gl_status gl_verify_chain(const gl_matrix* a, size_t k, size_t trials, const gl_solver_options* o, gl_report** out) {
  if (!a || !out) return null_arg("gl_verify_chain");
  return guarded([&] {
    *out = new gl_report{verify_chain(a->m, k, trials, to_options(o))};
    return GL_OK;
  });
}

int gl_report_passed(const gl_report* r) { return r && r->r.all_passed() ? 1 : 0; }
int gl_report_certified(const gl_report* r) { return r && r->r.ideal_certified ? 1 : 0; }

gl_status gl_report_to_json(const gl_report* r, char** out) {
  if (!r || !out) return null_arg("gl_report_to_json");
  return guarded([&] {
    *out = dup(bounds_report_json(r->r));
    return GL_OK;
  });
}

void gl_report_free(gl_report* r) { delete r; }

void gl_overrides_init(gl_overrides* o) {
  if (!o) return;
  *o = gl_overrides{};
  o->trials = -1;
  o->strict = -1;
  o->threads = -1;
}

gl_status gl_run_experiment(const char* config_path, const gl_overrides* o, int* exit_code, char** summary) {
  if (!exit_code) return null_arg("gl_run_experiment");
  if (summary) *summary = nullptr;
  *exit_code = kExitIo;
  return guarded([&] {
    ExperimentConfig cfg;
    if (config_path) {
      cfg = load_experiment_config(config_path);
    } else if (!o || !o->matrix) {
      return fail(GL_ERR_INVALID_SPEC, "gl_run_experiment: no config file and no matrix override");
    }
    if (o) {
      ConfigOverrides ov;
      if (o->matrix) ov.matrix = o->matrix;
      if (o->depths) ov.depths = o->depths;
      if (o->trials >= 0) ov.trials = static_cast<std::size_t>(o->trials);
      if (o->has_seed) ov.seed = o->seed;
      if (o->out_dir) ov.out_dir = o->out_dir;
      if (o->strict >= 0) ov.strict = o->strict != 0;
      if (o->threads >= 0) ov.threads = static_cast<unsigned>(o->threads);
      apply_overrides(cfg, ov);
    }
    const auto res = run_experiment(cfg);
    *exit_code = res.exit_code;
    if (summary) *summary = dup(res.summary);
    return GL_OK;
  });
}

}  // extern "C"
