#pragma once

// Field of values F(A) = { <Av, v> / <v, v> : v != 0 } and its distance from
// the origin, computed through the support function
//   max_{z in F(A)} Re(e^{-i theta} z) = lambda_max(H(theta)),
//   H(theta) = 1/2 (e^{-i theta} A + e^{i theta} A^H).

#include <optional>

#include "gmreslab/dense.hpp"

namespace gmreslab {

/// <Av, v> / <v, v>. Throws ZeroVector.
cplx rayleigh(const Matrix& a, std::span<const cplx> v);

/// H(theta) as defined above, stored exactly Hermitian.
Matrix rotated_hermitian_part(const Matrix& a, double theta);

struct SupportExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  CVector v_min;
  CVector v_max;
};

SupportExtremes support_extremes(const Matrix& a, double theta);

struct FovBoundary {
  std::vector<double> angles;
  std::vector<cplx> points;
  std::vector<double> support_max;
  std::vector<double> support_min;
};

/// Boundary points at `samples` equispaced angles in [0, 2 pi). samples >= 8.
FovBoundary fov_boundary(const Matrix& a, std::size_t samples);

struct NuSearchOptions {
  std::size_t coarse_angles = 720;
  std::size_t refine_cells = 3;
  double angular_width = 1e-10;
};

struct NuResult {
  double nu = 0.0;
  double argmin_angle = 0.0;
  std::optional<CVector> witness;  // present only when nu > 0
};

/// nu(F(A)) = max(0, max_theta lambda_min(H(theta))).
NuResult nu_fov(const Matrix& a, const NuSearchOptions& opts = {});

/// nu(F(A^{-1})) with A^{-1} formed explicitly. Throws SingularMatrix.
double nu_fov_inverse(const Matrix& a, const NuSearchOptions& opts = {});

struct FovSummary {
  double nu_A = 0.0;
  double nu_Ainv = 0.0;
  double lambda_min_M = 0.0;
  double argmin_angle = 0.0;
  std::optional<CVector> witness_vector;
  FovBoundary boundary;  // empty unless boundary samples were requested
};

FovSummary summarize_fov(const Matrix& a, std::size_t boundary_samples = 0);

}  // namespace gmreslab
