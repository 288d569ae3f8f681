#pragma once

#include <optional>
#include <string>

#include "gmreslab/dense.hpp"
#include "gmreslab/minimax.hpp"

namespace gmreslab {

/// (1 - lambda_min(M)^2 / lambda_max(A^H A))^{k/2}, or nullopt when the
/// Hermitian part M is not positive definite.
std::optional<double> elman_bound(const Matrix& a, std::size_t k);

/// (1 - nu(F(A)) nu(F(A^{-1})))^{k/2}; 1 when either distance is zero.
/// Throws SingularMatrix.
double starke_bound(const Matrix& a, std::size_t k);

/// One-sided slacks for the inequality checks.
struct ChainSlacks {
  double gmres_vs_worst = 1e-6;
  double worst_vs_ideal = 1e-6;
  double ideal_vs_starke = 1e-8;
  double ideal_vs_elman = 1e-8;
  double starke_vs_elman = 1e-8;
};

/// lhs <= rhs + slack, with margin = rhs + slack - lhs.
struct Verdict {
  std::string name;
  bool applicable = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double margin = 0.0;
  bool passed = true;
  bool certified = true;
};

struct BoundsReport {
  std::size_t k = 0;
  std::size_t trials = 0;
  double gmres_ratio = 0.0;  // largest ratio over the sampled r0
  double gmres_min = 0.0;
  double gmres_median = 0.0;
  double gmres_max = 0.0;
  double worst_case = 0.0;
  double worst_case_upper = 0.0;
  double ideal = 0.0;
  double ideal_lower = 0.0;
  bool ideal_certified = false;
  ResidualPolynomial ideal_polynomial;
  std::optional<double> elman_rhs;
  double starke_rhs = 1.0;
  double nu_A = 0.0;
  double nu_Ainv = 0.0;
  double lambda_min_M = 0.0;
  double lambda_max_AHA = 0.0;
  std::vector<Verdict> verdicts;

  bool all_passed() const noexcept;
};

/// Spectral ingredients shared by both bounds; independent of k.
struct BoundIngredients {
  double nu_A = 0.0;
  double nu_Ainv = 0.0;
  double lambda_min_M = 0.0;
  double lambda_max_M = 0.0;
  double lambda_max_AHA = 0.0;
  bool positive_definite = false;
};

BoundIngredients bound_ingredients(const Matrix& a);
std::optional<double> elman_bound(const BoundIngredients& in, std::size_t k);
double starke_bound(const BoundIngredients& in, std::size_t k);

/// Computes every quantity for depth k and checks
///   (a) GMRES ratio <= worst case        for `trials` random r0
///   (b) worst case  <= ideal
///   (c) ideal       <= Starke bound
///   (d) ideal       <= Elman bound       (when M is positive definite)
///   (e) Starke      <= Elman             (when M is positive definite)
BoundsReport verify_chain(const Matrix& a, std::size_t k, std::size_t trials, const SolverOptions& opts = {},
                          const ChainSlacks& slacks = {});
BoundsReport verify_chain(const Matrix& a, const BoundIngredients& in, std::size_t k, std::size_t trials,
                          const SolverOptions& opts = {}, const ChainSlacks& slacks = {});

}  // namespace gmreslab
