#pragma once

#include <optional>

#include "gmreslab/dense.hpp"

namespace gmreslab {

struct ProblemInstance {
  Matrix A;
  CVector b;
  CVector x0;

  /// r0 = b - A x0.
  CVector initial_residual() const;
};

/// A V_m = V_{m+1} Hbar_m with orthonormal V.
///
/// After a lucky breakdown at step j, `basis` holds only v_1..v_j and the last
/// row of `hessenberg` carries the (negligible) breakdown norm.
struct ArnoldiDecomposition {
  Matrix basis;       // n x (steps + 1), or n x steps after breakdown
  Matrix hessenberg;  // (steps + 1) x steps
  std::size_t steps = 0;
  std::optional<std::size_t> breakdown_step;
};

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws ZeroVector.
ArnoldiDecomposition arnoldi(const Matrix& a, std::span<const cplx> r0, std::size_t steps);

/// ratios[k] = ||r_k|| / ||r_0|| for k = 0..kmax.
struct ResidualCurve {
  std::vector<double> ratios;
};

/// Full (unrestarted) GMRES residual history via Arnoldi and Givens rotations.
/// Breakdown counts as exact convergence; later entries are zero.
ResidualCurve gmres_residuals(const Matrix& a, std::span<const cplx> r0, std::size_t kmax);
ResidualCurve gmres_residuals(const ProblemInstance& problem, std::size_t kmax);

struct PolynomialFit {
  double value = 0.0;  // min_p ||p(A) v|| / ||v||
  ResidualPolynomial poly;
};

/// Solves min_c || v + [Av, A^2 v, ..., A^k v] c || with a column-pivoted
/// Householder QR on the unit-scaled Krylov block.
PolynomialFit min_residual_over_polys(const Matrix& a, std::span<const cplx> v, std::size_t k);

struct OneStepResult {
  cplx alpha_star;
  double residual_ratio = 0.0;
};

/// alpha* = <v, Av> / <Av, Av>, residual_ratio = ||v - alpha* A v|| / ||v||.
/// Throws ZeroVector, or DegenerateImage when A v vanishes.
OneStepResult optimal_alpha(const Matrix& a, std::span<const cplx> v);

}  // namespace gmreslab
