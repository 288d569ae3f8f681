#include "gmreslab/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

// A^j v is treated as zero below this multiple of ||A||_F ||A^{j-1} v||.
constexpr double kVanishingImage = 1e-14;

void require_operator(const Matrix& a, const char* what) {
  if (!a.is_square() || a.empty())
    throw LabError(ErrorCode::InvalidArgument, std::string(what) + ": matrix must be square and non-empty");
}

// Column-pivoted Householder least squares: min || b - M y ||.
struct LeastSquares {
  std::vector<cplx> y;  // in original column order
  double residual = 0.0;
};

LeastSquares pivoted_qr_solve(std::vector<CVector> cols, CVector b) {
  const std::size_t n = b.size();
  const std::size_t m = cols.size();
  const std::size_t steps = std::min(n, m);
  std::vector<std::size_t> perm(m);
  for (std::size_t j = 0; j < m; ++j) perm[j] = j;

  auto tail_norm = [&](const CVector& c, std::size_t from) {
    return norm2(std::span<const cplx>(c).subspan(from));
  };

  const double rank_tol = static_cast<double>(std::max(n, m)) * std::numeric_limits<double>::epsilon();
  double r00 = 0.0;
  std::size_t rank = 0;

  for (std::size_t i = 0; i < steps; ++i) {
    std::size_t piv = i;
    double best = tail_norm(cols[i], i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double t = tail_norm(cols[j], i);
      if (t > best) {
        best = t;
        piv = j;
      }
    }
    if (i == 0) r00 = best;
    if (best == 0.0 || best <= rank_tol * r00) break;
    std::swap(cols[i], cols[piv]);
    std::swap(perm[i], perm[piv]);

    CVector& x = cols[i];
    const cplx x0 = x[i];
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx{1.0};
    const cplx alpha = -phase * best;
    CVector v(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    v[0] -= alpha;
    const double vn = norm2(v);
    if (vn > 0.0) {
      for (auto& z : v) z /= vn;
      auto reflect = [&](CVector& target) {
        cplx s{};
        for (std::size_t r = 0; r < v.size(); ++r) s += std::conj(v[r]) * target[i + r];
        s *= 2.0;
        for (std::size_t r = 0; r < v.size(); ++r) target[i + r] -= s * v[r];
      };
      for (std::size_t j = i + 1; j < m; ++j) reflect(cols[j]);
      reflect(b);
    }
    x[i] = alpha;
    for (std::size_t r = i + 1; r < n; ++r) x[r] = 0.0;
    rank = i + 1;
  }

  LeastSquares out;
  out.residual = tail_norm(b, rank);
  std::vector<cplx> z(rank);
  for (std::size_t ii = rank; ii-- > 0;) {
    cplx s = b[ii];
    for (std::size_t j = ii + 1; j < rank; ++j) s -= cols[j][ii] * z[j];
    z[ii] = s / cols[ii][ii];
  }
  out.y.assign(m, cplx{});
  for (std::size_t j = 0; j < rank; ++j) out.y[perm[j]] = z[j];
  return out;
}

}  // namespace

CVector ProblemInstance::initial_residual() const {
  if (A.rows() != b.size() || A.cols() != x0.size())
    throw LabError(ErrorCode::InvalidArgument, "problem instance: dimensions do not conform");
  CVector r = A * x0;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

ArnoldiDecomposition arnoldi(const Matrix& a, std::span<const cplx> r0, std::size_t steps) {
  require_operator(a, "arnoldi");
  const std::size_t n = a.rows();
  if (r0.size() != n) throw LabError(ErrorCode::InvalidArgument, "arnoldi: vector length mismatch");
  if (steps > n) throw LabError(ErrorCode::InvalidArgument, "arnoldi: more steps than the dimension");
  const double beta = norm2(r0);
  if (beta == 0.0) throw LabError(ErrorCode::ZeroVector, "arnoldi: zero starting vector");

  const double floor = default_tolerances().arnoldi_breakdown * spectral_norm(a);
  std::vector<CVector> basis;
  basis.push_back(normalized(r0));
  Matrix h(steps + 1, steps);

  ArnoldiDecomposition out;
  std::size_t done = 0;
  for (std::size_t j = 0; j < steps; ++j) {
    CVector w = a * basis[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i <= j; ++i) {
        const cplx hij = inner(w, basis[i]);
        h(i, j) += hij;
        for (std::size_t r = 0; r < n; ++r) w[r] -= hij * basis[i][r];
      }
    }
    const double hn = norm2(w);
    h(j + 1, j) = hn;
    done = j + 1;
    if (hn <= floor) {
      out.breakdown_step = done;
      break;
    }
    for (auto& z : w) z /= hn;
    basis.push_back(std::move(w));
  }

  out.steps = done;
  out.hessenberg = Matrix(done + 1, done);
  for (std::size_t i = 0; i <= done; ++i)
    for (std::size_t j = 0; j < done; ++j) out.hessenberg(i, j) = h(i, j);
  out.basis = Matrix(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) out.basis.set_column(j, basis[j]);
  return out;
}

ResidualCurve gmres_residuals(const Matrix& a, std::span<const cplx> r0, std::size_t kmax) {
  require_operator(a, "gmres_residuals");
  if (kmax > a.rows()) throw LabError(ErrorCode::InvalidArgument, "gmres_residuals: kmax exceeds dimension");
  if (norm2(r0) == 0.0) throw LabError(ErrorCode::ZeroVector, "gmres_residuals: zero initial residual");

  ResidualCurve curve;
  curve.ratios.assign(kmax + 1, 0.0);
  curve.ratios[0] = 1.0;
  if (kmax == 0) return curve;

  auto dec = arnoldi(a, r0, kmax);
  Matrix& h = dec.hessenberg;
  std::vector<double> cs;
  std::vector<cplx> sn;
  double g = 1.0;  // |g_{j+1}| / beta after j rotations

  for (std::size_t j = 0; j < dec.steps; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const cplx top = h(i, j), bot = h(i + 1, j);
      h(i, j) = cs[i] * top + sn[i] * bot;
      h(i + 1, j) = -std::conj(sn[i]) * top + cs[i] * bot;
    }
    const cplx x = h(j, j);
    const cplx y = h(j + 1, j);
    const double r = std::hypot(std::abs(x), std::abs(y));
    double c;
    cplx s;
    if (std::abs(x) == 0.0) {
      c = 0.0;
      s = 1.0;
    } else {
      c = std::abs(x) / r;
      s = c * std::conj(y) / std::conj(x);
    }
    cs.push_back(c);
    sn.push_back(s);
    h(j, j) = c * x + s * y;
    h(j + 1, j) = 0.0;
    g *= std::abs(s);
    curve.ratios[j + 1] = g;
  }
  if (dec.breakdown_step) {
    for (std::size_t k = *dec.breakdown_step; k <= kmax; ++k) curve.ratios[k] = 0.0;
  }
  return curve;
}

ResidualCurve gmres_residuals(const ProblemInstance& problem, std::size_t kmax) {
  const CVector r0 = problem.initial_residual();
  return gmres_residuals(problem.A, r0, kmax);
}

PolynomialFit min_residual_over_polys(const Matrix& a, std::span<const cplx> v, std::size_t k) {
  require_operator(a, "min_residual_over_polys");
  if (k == 0) throw LabError(ErrorCode::InvalidArgument, "min_residual_over_polys: depth must be >= 1");
  if (v.size() != a.rows()) throw LabError(ErrorCode::InvalidArgument, "min_residual_over_polys: length mismatch");
  if (norm2(v) == 0.0) throw LabError(ErrorCode::ZeroVector, "min_residual_over_polys: zero vector");

  const CVector u = normalized(v);
  const double afro = frobenius_norm(a);

  // Unit-scaled Krylov columns A^j u / ||A^j u||, with the cumulative scale
  // kept to unscale coefficients afterwards.
  std::vector<CVector> cols;
  std::vector<double> scale;
  CVector cur = u;
  double cum = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    CVector w = a * cur;
    const double nw = norm2(w);
    if (nw <= kVanishingImage * afro) break;
    for (auto& z : w) z /= nw;
    cum *= nw;
    cols.push_back(w);
    scale.push_back(cum);
    cur = std::move(w);
  }

  PolynomialFit fit;
  fit.poly.coeffs.assign(k, cplx{});
  if (cols.empty()) {
    fit.value = 1.0;
    return fit;
  }
  CVector rhs(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rhs[i] = -u[i];
  const auto ls = pivoted_qr_solve(std::move(cols), std::move(rhs));
  for (std::size_t j = 0; j < ls.y.size(); ++j) fit.poly.coeffs[j] = ls.y[j] / scale[j];
  fit.value = std::min(ls.residual, 1.0);
  return fit;
}

OneStepResult optimal_alpha(const Matrix& a, std::span<const cplx> v) {
  require_operator(a, "optimal_alpha");
  const double nv = norm2(v);
  if (nv == 0.0) throw LabError(ErrorCode::ZeroVector, "optimal_alpha: zero vector");
  const CVector av = a * v;
  const double nav = norm2(av);
  if (nav == 0.0 || nav <= kVanishingImage * frobenius_norm(a) * nv)
    throw LabError(ErrorCode::DegenerateImage, "optimal_alpha: A v vanishes");

  const cplx v_av = inner(v, av);  // <v, Av> = (Av)^H v
  OneStepResult out;
  out.alpha_star = v_av / (nav * nav);
  const double cos2 = std::norm(v_av) / (nav * nav * nv * nv);
  out.residual_ratio = std::sqrt(std::clamp(1.0 - cos2, 0.0, 1.0));
  return out;
}

}  // namespace gmreslab
