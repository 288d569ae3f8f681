#pragma once

// Worst-case GMRES   max_{v != 0} min_{p in pi_k} ||p(A) v|| / ||v||
// Ideal GMRES        min_{p in pi_k} ||p(A)||
//
// Both solvers return bracketing certificates: every reported lower bound is
// attained by a concrete vector or dual matrix, every upper bound by a
// concrete polynomial.

#include <cstdint>
#include <optional>

#include "gmreslab/dense.hpp"

namespace gmreslab {

struct SolverOptions {
  int starts = 16;             // ideal GMRES starting points
  int max_iters = 200;         // per start, both solvers
  int worst_case_starts = 20;  // random starts for the outer ascent
  double fd_step = 1e-6;       // central differences, scaled by (1 + ||v||)
  int max_halvings = 25;       // consecutive failed ascent steps ending a start
  double ascent_step = 0.5;    // initial outer ascent step
  double armijo = 1e-4;        // weak Wolfe line search
  double curvature = 0.9;
  int lower_bound_probes = 8;  // random vectors probed for the ideal lower bound
  std::uint64_t seed = 0x5eed;
  double tolerance = 1e-6;     // certification gap for ideal GMRES
  int polish_rounds = 10;      // extra restarts of the best ideal start while uncertified
};

struct MinimaxResult {
  double value = 0.0;
  std::optional<ResidualPolynomial> coefficients;
  CVector witness_vector;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  int starts_used = 0;
  bool certified = false;

  double gap() const noexcept { return upper_bound - lower_bound; }
};

/// sigma_max(p(A)); the objective minimized by ideal_gmres.
double ideal_objective(const Matrix& a, const ResidualPolynomial& p);

/// Minimizes sigma_max(p(A)) over complex coefficients, 1 <= k <= 8.
/// value == upper_bound. `certified` is false when the bracket is wider than
/// opts.tolerance (reported as BudgetExceeded through the C API).
MinimaxResult ideal_gmres(const Matrix& a, std::size_t k, const SolverOptions& opts = {});

/// Multi-start projected ascent on the unit sphere; value is attained at
/// witness_vector and is therefore a lower bound for worst-case and ideal GMRES.
/// `extra_starts` are ascended before the random starts.
MinimaxResult worst_case_gmres(const Matrix& a, std::size_t k, const SolverOptions& opts = {},
                               std::span<const CVector> extra_starts = {});

struct OneStepIdeal {
  double value = 0.0;
  cplx alpha;
};

/// min_alpha ||I - alpha A||.
OneStepIdeal one_step_ideal(const Matrix& a, const SolverOptions& opts = {});

/// Test oracle for normal matrices: min_p max_i |p(lambda_i)| by grid search
/// and pattern-search refinement. Budget: k <= 3, at most 12 eigenvalues.
double scalar_minimax_oracle(std::span<const cplx> eigenvalues, std::size_t k);

/// Lower bound on ideal GMRES from a dual matrix X with <X, A^j> = 0:
/// Re tr(X) / ||X||_*. Built from the top singular subspace of p(A).
double ideal_dual_lower_bound(const Matrix& a, const ResidualPolynomial& p);

}  // namespace gmreslab
