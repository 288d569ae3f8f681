#include "gmreslab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "gmreslab/errors.hpp"
#include "gmreslab/fov.hpp"
#include "gmreslab/krylov.hpp"
#include "gmreslab/random.hpp"

namespace gmreslab {

namespace {

constexpr std::uint64_t kTrialStream = 3u << 20;

struct HermitianData {
  double lambda_min_M = 0.0;
  double lambda_max_M = 0.0;
  double lambda_max_AHA = 0.0;
  bool positive_definite = false;
};

HermitianData hermitian_data(const Matrix& a) {
  HermitianData h;
  const auto m = eig_hermitian(hermitian_part(a));
  h.lambda_min_M = m.values.front();
  h.lambda_max_M = m.values.back();
  h.lambda_max_AHA = std::max(eig_hermitian(gram(a)).values.back(), 0.0);
  const double m_norm = std::max(std::abs(h.lambda_min_M), std::abs(h.lambda_max_M));
  h.positive_definite = h.lambda_min_M > default_tolerances().positive_definite * m_norm;
  return h;
}

double power_half(double base, std::size_t k) {
  return std::pow(std::clamp(base, 0.0, 1.0), 0.5 * static_cast<double>(k));
}

Verdict make_verdict(std::string name, double lhs, double rhs, double slack, bool certified) {
  Verdict v;
  v.name = std::move(name);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = slack;
  v.margin = rhs + slack - lhs;
  v.passed = v.margin >= 0.0;
  v.certified = certified;
  return v;
}

Verdict not_applicable(std::string name, double slack) {
  Verdict v;
  v.name = std::move(name);
  v.applicable = false;
  v.slack = slack;
  return v;
}

}  // namespace

bool BoundsReport::all_passed() const noexcept {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

BoundIngredients bound_ingredients(const Matrix& a) {
  if (!a.is_square() || a.empty()) throw LabError(ErrorCode::InvalidArgument, "bounds: matrix must be square");
  const auto h = hermitian_data(a);
  BoundIngredients in;
  in.lambda_min_M = h.lambda_min_M;
  in.lambda_max_M = h.lambda_max_M;
  in.lambda_max_AHA = h.lambda_max_AHA;
  in.positive_definite = h.positive_definite;
  in.nu_A = nu_fov(a).nu;
  in.nu_Ainv = nu_fov_inverse(a);
  return in;
}

std::optional<double> elman_bound(const BoundIngredients& in, std::size_t k) {
  if (!in.positive_definite || in.lambda_max_AHA <= 0.0) return std::nullopt;
  return power_half(1.0 - in.lambda_min_M * in.lambda_min_M / in.lambda_max_AHA, k);
}

double starke_bound(const BoundIngredients& in, std::size_t k) {
  if (in.nu_A <= 0.0 || in.nu_Ainv <= 0.0) return 1.0;
  return power_half(1.0 - in.nu_A * in.nu_Ainv, k);
}

std::optional<double> elman_bound(const Matrix& a, std::size_t k) {
  if (!a.is_square() || a.empty()) throw LabError(ErrorCode::InvalidArgument, "elman_bound: matrix must be square");
  const auto h = hermitian_data(a);
  BoundIngredients in;
  in.lambda_min_M = h.lambda_min_M;
  in.lambda_max_AHA = h.lambda_max_AHA;
  in.positive_definite = h.positive_definite;
  return elman_bound(in, k);
}

double starke_bound(const Matrix& a, std::size_t k) {
  if (!a.is_square() || a.empty()) throw LabError(ErrorCode::InvalidArgument, "starke_bound: matrix must be square");
  BoundIngredients in;
  in.nu_Ainv = nu_fov_inverse(a);  // throws SingularMatrix first
  in.nu_A = nu_fov(a).nu;
  return starke_bound(in, k);
}

BoundsReport verify_chain(const Matrix& a, std::size_t k, std::size_t trials, const SolverOptions& opts,
                          const ChainSlacks& slacks) {
  return verify_chain(a, bound_ingredients(a), k, trials, opts, slacks);
}

BoundsReport verify_chain(const Matrix& a, const BoundIngredients& in, std::size_t k, std::size_t trials,
                          const SolverOptions& opts, const ChainSlacks& slacks) {
  if (k < 1 || k > a.rows())
    throw LabError(ErrorCode::InvalidArgument, "verify_chain: depth must lie in [1, n]");
  const std::size_t n = a.rows();

  BoundsReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.nu_A = in.nu_A;
  rep.nu_Ainv = in.nu_Ainv;
  rep.lambda_min_M = in.lambda_min_M;
  rep.lambda_max_AHA = in.lambda_max_AHA;
  rep.starke_rhs = starke_bound(in, k);
  rep.elman_rhs = elman_bound(in, k);

  std::vector<double> ratios;
  CVector hardest_r0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(opts.seed, kTrialStream + t);
    CVector r0 = random_vector(rng, n);
    const double ratio = gmres_residuals(a, r0, k).ratios[k];
    if (ratios.empty() || ratio > *std::max_element(ratios.begin(), ratios.end())) hardest_r0 = r0;
    ratios.push_back(ratio);
  }
  if (!ratios.empty()) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.gmres_min = sorted.front();
    rep.gmres_max = sorted.back();
    const std::size_t mid = sorted.size() / 2;
    rep.gmres_median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    rep.gmres_ratio = rep.gmres_max;
  }

  const auto ideal = ideal_gmres(a, k, opts);
  rep.ideal = ideal.upper_bound;
  rep.ideal_lower = ideal.lower_bound;
  rep.ideal_certified = ideal.certified;
  rep.ideal_polynomial = *ideal.coefficients;

  // The ascent also starts from the ideal witness and from the hardest
  // sampled residual, so the reported worst case dominates both.
  std::vector<CVector> extra{ideal.witness_vector};
  if (!hardest_r0.empty()) extra.push_back(hardest_r0);
  const auto worst = worst_case_gmres(a, k, opts, extra);
  rep.worst_case = worst.value;
  rep.worst_case_upper = worst.upper_bound;

  if (trials > 0)
    rep.verdicts.push_back(make_verdict("gmres_le_worst_case", rep.gmres_ratio, rep.worst_case,
                                        slacks.gmres_vs_worst, true));
  else
    rep.verdicts.push_back(not_applicable("gmres_le_worst_case", slacks.gmres_vs_worst));

  // Non-certified ideal values are compared through their upper bound only.
  rep.verdicts.push_back(make_verdict("worst_case_le_ideal", rep.worst_case, rep.ideal, slacks.worst_vs_ideal,
                                      ideal.certified));
  rep.verdicts.push_back(
      make_verdict("ideal_le_starke", rep.ideal, rep.starke_rhs, slacks.ideal_vs_starke, ideal.certified));
  if (rep.elman_rhs) {
    rep.verdicts.push_back(
        make_verdict("ideal_le_elman", rep.ideal, *rep.elman_rhs, slacks.ideal_vs_elman, ideal.certified));
    rep.verdicts.push_back(
        make_verdict("starke_le_elman", rep.starke_rhs, *rep.elman_rhs, slacks.starke_vs_elman, true));
  } else {
    rep.verdicts.push_back(not_applicable("ideal_le_elman", slacks.ideal_vs_elman));
    rep.verdicts.push_back(not_applicable("starke_le_elman", slacks.starke_vs_elman));
  }
  return rep;
}

}  // namespace gmreslab
