#include "gmreslab/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gmreslab/errors.hpp"
#include "gmreslab/krylov.hpp"
#include "gmreslab/random.hpp"

namespace gmreslab {

namespace {

constexpr std::size_t kMaxDegree = 8;

// Stream offsets keep the RNG draws of different consumers disjoint.
constexpr std::uint64_t kIdealStream = 0;
constexpr std::uint64_t kProbeStream = 1u << 20;
constexpr std::uint64_t kWorstStream = 2u << 20;

void check_problem(const Matrix& a, std::size_t k, const char* what) {
  if (!a.is_square() || a.empty())
    throw LabError(ErrorCode::InvalidArgument, std::string(what) + ": matrix must be square");
  if (k < 1 || k > kMaxDegree)
    throw LabError(ErrorCode::InvalidArgument, std::string(what) + ": depth must lie in [1, 8]");
}

double binomial(std::size_t k, std::size_t j) {
  double r = 1.0;
  for (std::size_t i = 1; i <= j; ++i) r = r * static_cast<double>(k - j + i) / static_cast<double>(i);
  return r;
}

// (1 - alpha z)^k in the p(0) = 1 normalization.
ResidualPolynomial kfold(cplx alpha, std::size_t k) {
  ResidualPolynomial p;
  p.coeffs.resize(k);
  for (std::size_t j = 1; j <= k; ++j) p.coeffs[j - 1] = binomial(k, j) * std::pow(-alpha, static_cast<double>(j));
  return p;
}

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

// sigma_max(I + sum_j d_j B_j) with B_j = (A / s)^j, s = ||A||. The variables
// x = (Re d_1, Im d_1, ..., Re d_k, Im d_k) are the coefficients rescaled so
// every power has unit norm scale.
class IdealObjective {
 public:
  IdealObjective(const Matrix& a, std::size_t k) : n_(a.rows()), k_(k) {
    scale_ = spectral_norm(a);
    if (scale_ == 0.0) scale_ = 1.0;
    const Matrix b = (1.0 / scale_) * a;
    powers_.push_back(b);
    for (std::size_t j = 1; j < k; ++j) powers_.push_back(powers_.back() * b);
  }

  std::size_t dim() const noexcept { return 2 * k_; }
  const std::vector<Matrix>& powers() const noexcept { return powers_; }

  Matrix poly_matrix(std::span<const double> x) const {
    Matrix p = Matrix::identity(n_);
    for (std::size_t j = 0; j < k_; ++j) {
      const cplx d(x[2 * j], x[2 * j + 1]);
      if (d == cplx{}) continue;
      for (std::size_t r = 0; r < n_; ++r) {
        auto prow = p.row(r);
        auto brow = powers_[j].row(r);
        for (std::size_t c = 0; c < n_; ++c) prow[c] += d * brow[c];
      }
    }
    return p;
  }

  double eval(std::span<const double> x, std::vector<double>* grad) const {
    const auto sp = top_singular_pair(poly_matrix(x));
    if (grad) {
      grad->assign(dim(), 0.0);
      if (sp.sigma > 0.0) {
        for (std::size_t j = 0; j < k_; ++j) {
          const cplx z = inner(powers_[j] * sp.right, sp.left);  // u^H B_j w
          (*grad)[2 * j] = z.real();
          (*grad)[2 * j + 1] = -z.imag();
        }
      }
    }
    return sp.sigma;
  }

  ResidualPolynomial to_poly(std::span<const double> x) const {
    ResidualPolynomial p;
    p.coeffs.resize(k_);
    double s = 1.0;
    for (std::size_t j = 0; j < k_; ++j) {
      s *= scale_;
      p.coeffs[j] = cplx(x[2 * j], x[2 * j + 1]) / s;
    }
    return p;
  }

  std::vector<double> from_poly(const ResidualPolynomial& p) const {
    std::vector<double> x(dim());
    double s = 1.0;
    for (std::size_t j = 0; j < k_; ++j) {
      s *= scale_;
      const cplx d = p.coeffs[j] * s;
      x[2 * j] = d.real();
      x[2 * j + 1] = d.imag();
    }
    return x;
  }

 private:
  std::size_t n_;
  std::size_t k_;
  double scale_ = 1.0;
  std::vector<Matrix> powers_;
};

struct LocalMin {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> hinv;  // inverse Hessian approximation, empty if unscaled
  bool stalled = false;      // stopped before the iteration cap
};

// BFGS with a weak Wolfe bracketing line search. Applied directly to the
// nonsmooth objective; the line search fails once the iterate sits on a kink
// it cannot leave, which ends the start.
template <class Objective>
LocalMin bfgs_minimize(const Objective& obj, std::vector<double> x, const SolverOptions& opts,
                       std::vector<double> warm_hinv = {}) {
  const std::size_t dim = obj.dim();
  std::vector<double> g, gt;
  double f = obj.eval(x, &g);
  std::vector<double> hinv(dim * dim, 0.0);
  auto reset_h = [&](double diag) {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = diag;
  };
  reset_h(1.0);
  bool scaled = false;
  if (warm_hinv.size() == hinv.size()) {
    hinv = std::move(warm_hinv);
    scaled = true;
  }
  bool stalled = false;

  std::vector<double> d(dim), xt(dim), s(dim), y(dim), hy(dim);
  for (int it = 0; it < opts.max_iters; ++it) {
    if (f == 0.0 || std::sqrt(dot(g, g)) == 0.0) {
      stalled = true;
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j) acc -= hinv[i * dim + j] * g[j];
      d[i] = acc;
    }
    double gd = dot(g, d);
    if (!(gd < 0.0)) {
      reset_h(1.0);
      scaled = false;
      for (std::size_t i = 0; i < dim; ++i) d[i] = -g[i];
      gd = -dot(g, g);
    }

    double t = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
    double ft = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < dim; ++i) xt[i] = x[i] + t * d[i];
      ft = obj.eval(xt, &gt);
      if (ft > f + opts.armijo * t * gd) {
        hi = t;
      } else if (dot(gt, d) < opts.curvature * gd) {
        lo = t;
      } else {
        accepted = true;
        break;
      }
      t = std::isinf(hi) ? 2.0 * t : 0.5 * (lo + hi);
      if (hi - lo < 1e-16 * (1.0 + t)) break;
    }
    if (!accepted) {
      // keep a strict decrease found during the search, then stop
      if (ft < f) {
        x = xt;
        f = ft;
      }
      stalled = true;
      break;
    }

    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = xt[i] - x[i];
      y[i] = gt[i] - g[i];
    }
    x = xt;
    f = ft;
    g = gt;

    const double sy = dot(s, y);
    if (sy > 0.0) {
      if (!scaled) {
        reset_h(sy / dot(y, y));
        scaled = true;
      }
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += hinv[i * dim + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      // H+ = H - rho (H y s^T + s y^T H) + (rho^2 y^T H y + rho) s s^T
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          hinv[i * dim + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
    }
    if (std::sqrt(dot(s, s)) <= 1e-15 * (1.0 + std::sqrt(dot(x, x)))) {
      stalled = true;
      break;
    }
  }
  LocalMin out{std::move(x), f, {}, stalled};
  if (scaled) out.hinv = std::move(hinv);
  return out;
}

struct IdealRun {
  LocalMin best;
  int starts_used = 0;
};

IdealRun run_ideal(const Matrix& a, const IdealObjective& obj, std::size_t k, const SolverOptions& opts,
                   int count, bool one_step_start) {
  std::vector<std::vector<double>> starts;

  // k-fold root at alpha* taken from the dominant right singular vector.
  try {
    const auto sp = top_singular_pair(a);
    starts.push_back(obj.from_poly(kfold(optimal_alpha(a, sp.right).alpha_star, k)));
  } catch (const LabError&) {
  }
  if (one_step_start && k > 1) {
    const IdealObjective obj1(a, 1);
    const auto one = run_ideal(a, obj1, 1, opts, std::min(count, 4), false);
    starts.push_back(obj.from_poly(kfold(-obj1.to_poly(one.best.x).coeffs[0], k)));
  }
  for (std::size_t i = starts.size(); static_cast<int>(starts.size()) < std::max(count, 1); ++i) {
    Rng rng = make_rng(opts.seed, kIdealStream + i);
    std::vector<double> x(obj.dim());
    for (std::size_t j = 0; j < k; ++j) {
      const cplx z = complex_gaussian(rng);
      x[2 * j] = z.real();
      x[2 * j + 1] = z.imag();
    }
    starts.push_back(std::move(x));
  }

  IdealRun run;
  bool have = false;
  for (auto& x0 : starts) {
    LocalMin m = bfgs_minimize(obj, std::move(x0), opts);
    ++run.starts_used;
    // strict improvement only: ties keep the lower start index
    if (!have || m.f < run.best.f) {
      run.best = std::move(m);
      have = true;
    }
  }
  return run;
}

constexpr double kDualCluster = 1e-4;

// Euclidean projection of the eigenvalues onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(x - tau, 0.0);
  return v;
}

Matrix project_density(const Matrix& z) {
  const auto spec = eig_hermitian(hermitian_part(z));
  const auto w = project_simplex(spec.values);
  const std::size_t r = z.rows();
  Matrix out(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cplx s{};
      for (std::size_t m = 0; m < r; ++m) s += w[m] * spec.vectors(i, m) * std::conj(spec.vectors(j, m));
      out(i, j) = s;
    }
  return hermitian_part(out);
}

cplx trace_product(const Matrix& z, const Matrix& g) {
  cplx t{};
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) t += z(i, j) * g(j, i);
  return t;
}

// Density matrix Z (Hermitian, PSD, trace one) minimizing sum_j |tr(Z G_j)|^2,
// by accelerated projected gradient with adaptive restart.
Matrix balance_density(const std::vector<Matrix>& gs, std::size_t r) {
  Matrix z = Matrix::identity(r);
  z *= 1.0 / static_cast<double>(r);
  if (r == 1) return z;
  double lip = 0.0;
  for (const auto& g : gs) lip += 2.0 * std::norm(frobenius_norm(g));
  if (lip == 0.0) return z;
  std::vector<Matrix> ghs;
  for (const auto& g : gs) ghs.push_back(g.adjoint());
  auto objective = [&](const Matrix& m, Matrix* grad) {
    double q = 0.0;
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const cplx t = trace_product(m, gs[j]);
      q += std::norm(t);
      if (grad)
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) (*grad)(a, b) += std::conj(t) * gs[j](a, b) + t * ghs[j](a, b);
    }
    return q;
  };
  Matrix y = z;
  double momentum = 1.0;
  double q = objective(z, nullptr);
  double checkpoint = q;
  for (int it = 0; it < 4000 && q >= 1e-30; ++it) {
    if (it > 0 && it % 200 == 0) {
      // a positive floor: the moments cannot be balanced in this subspace
      if (q > 0.5 * checkpoint) break;
      checkpoint = q;
    }
    Matrix grad(r);
    objective(y, &grad);
    grad *= -1.0 / lip;
    Matrix next = project_density(y + grad);
    const double qn = objective(next, nullptr);
    if (qn > q) {
      // restart the momentum from the last iterate
      momentum = 1.0;
      y = z;
      continue;
    }
    const double m2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = next + ((momentum - 1.0) / m2) * (next - z);
    momentum = m2;
    z = std::move(next);
    q = qn;
  }
  return z;
}

double nuclear_norm(const Matrix& x) {
  const auto spec = eig_hermitian(gram(x));
  double s = 0.0;
  for (double l : spec.values) s += std::sqrt(std::max(l, 0.0));
  return s;
}

double fd_phi(const Matrix& a, std::span<const cplx> v, std::size_t k) {
  return min_residual_over_polys(a, v, k).value;
}

struct Ascent {
  CVector v;
  double f = 0.0;
};

Ascent ascend(const Matrix& a, std::size_t k, CVector v, const SolverOptions& opts) {
  const std::size_t n = v.size();
  v = normalized(v);
  double f = fd_phi(a, v, k);
  double t = opts.ascent_step;
  int halvings = 0;
  CVector probe(n), g(n), cand(n);
  for (int it = 0; it < opts.max_iters && halvings < opts.max_halvings; ++it) {
    const double h = opts.fd_step * (1.0 + norm2(v));
    for (std::size_t i = 0; i < n; ++i) {
      double parts[2];
      for (int part = 0; part < 2; ++part) {
        const cplx e = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
        probe = v;
        probe[i] = v[i] + e;
        const double fp = fd_phi(a, probe, k);
        probe[i] = v[i] - e;
        const double fm = fd_phi(a, probe, k);
        parts[part] = (fp - fm) / (2.0 * h);
      }
      g[i] = cplx(parts[0], parts[1]);
    }
    // tangent projection on the real 2n-sphere
    const double radial = inner(g, v).real();
    for (std::size_t i = 0; i < n; ++i) g[i] -= radial * v[i];
    const double gn = norm2(g);
    if (gn == 0.0) break;

    bool improved = false;
    while (halvings < opts.max_halvings) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = v[i] + t * g[i];
      const double cn = norm2(cand);
      for (auto& z : cand) z /= cn;
      const double fc = fd_phi(a, cand, k);
      if (fc > f) {
        v = cand;
        f = fc;
        t = std::min(2.0 * t, 10.0 / gn);
        halvings = 0;
        improved = true;
        break;
      }
      t *= 0.5;
      ++halvings;
    }
    if (!improved) break;
  }
  return {std::move(v), f};
}

// -phi(v)^2 over x = (Re v_1, Im v_1, ...), with phi(v) = min_p ||p(A) v|| / ||v||.
// With the minimizing p held fixed (envelope theorem) the gradient of
// ||p(A) v||^2 is 2 p(A)^H p(A) v.
class WorstCaseObjective {
 public:
  WorstCaseObjective(const Matrix& a, std::size_t k) : a_(a), k_(k) {}

  std::size_t dim() const noexcept { return 2 * a_.rows(); }

  static CVector to_vector(std::span<const double> x) {
    CVector v(x.size() / 2);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(x[2 * i], x[2 * i + 1]);
    return v;
  }

  static std::vector<double> from_vector(std::span<const cplx> v) {
    std::vector<double> x(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      x[2 * i] = v[i].real();
      x[2 * i + 1] = v[i].imag();
    }
    return x;
  }

  double eval(std::span<const double> x, std::vector<double>* grad) const {
    const CVector v = to_vector(x);
    const double nv2 = std::norm(norm2(v));
    if (nv2 == 0.0) {
      if (grad) grad->assign(dim(), 0.0);
      return 0.0;
    }
    const auto fit = min_residual_over_polys(a_, v, k_);
    const double f = fit.value * fit.value;
    if (grad) {
      const Matrix p = evaluate_residual_polynomial(a_, fit.poly);
      const CVector w = p.adjoint() * (p * v);
      grad->resize(dim());
      for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx gi = -2.0 * (w[i] - f * v[i]) / nv2;
        (*grad)[2 * i] = gi.real();
        (*grad)[2 * i + 1] = gi.imag();
      }
    }
    return -f;
  }

 private:
  const Matrix& a_;
  std::size_t k_;
};

}  // namespace

double ideal_objective(const Matrix& a, const ResidualPolynomial& p) {
  return spectral_norm(evaluate_residual_polynomial(a, p));
}

double ideal_dual_lower_bound(const Matrix& a, const ResidualPolynomial& p) {
  const std::size_t n = a.rows();
  const std::size_t k = p.degree();
  if (k == 0) return 1.0;
  const Matrix pa = evaluate_residual_polynomial(a, p);
  const auto spec = eig_hermitian(gram(pa));
  const double sigma1 = std::sqrt(std::max(spec.values.back(), 0.0));
  if (sigma1 == 0.0) return 0.0;

  // Orthonormal basis (Frobenius inner product) of span{A, ..., A^k}.
  const double s = spectral_norm(a);
  std::vector<Matrix> basis;
  if (s > 0.0) {
    Matrix b = (1.0 / s) * a;
    Matrix pw = b;
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0) pw = pw * b;
      Matrix e = pw;
      const double orig = frobenius_norm(e);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) {
          const cplx c = trace_product(q.adjoint(), e);
          e -= c * q;
        }
      const double en = frobenius_norm(e);
      if (orig == 0.0 || en <= 1e-10 * orig) continue;
      e *= 1.0 / en;
      basis.push_back(std::move(e));
    }
  }

  // Subspace sizes tried: 1 .. 2k+1, plus the whole cluster of singular
  // values near sigma_1 (p close to 1 makes them all tie).
  std::size_t cluster = 0;
  while (cluster < n && std::sqrt(std::max(spec.values[n - 1 - cluster], 0.0)) >= (1.0 - kDualCluster) * sigma1)
    ++cluster;
  const std::size_t rmax = std::max(std::min(n, 2 * k + 1), cluster);

  double best = 0.0;
  std::vector<CVector> left, right;
  for (std::size_t r = 1; r <= rmax; ++r) {
    const std::size_t idx = n - r;
    const double sig = std::sqrt(std::max(spec.values[idx], 0.0));
    if (sig <= 0.0) break;
    right.push_back(spec.vectors.column(idx));
    CVector u = pa * right.back();
    for (auto& z : u) z /= sig;
    left.push_back(std::move(u));
    if (r > 2 * k + 1 && r < cluster) continue;

    Matrix ur(n, r), vr(n, r);
    for (std::size_t c = 0; c < r; ++c) {
      ur.set_column(c, left[c]);
      vr.set_column(c, right[c]);
    }
    std::vector<Matrix> gs;
    for (const auto& q : basis) gs.push_back(ur.adjoint() * q * vr);
    const Matrix z = balance_density(gs, r);

    Matrix x = ur * z * vr.adjoint();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const cplx c = trace_product(q.adjoint(), x);
        x -= c * q;
      }
    const double nuc = nuclear_norm(x);
    if (nuc <= 0.0) continue;
    cplx tr{};
    for (std::size_t i = 0; i < n; ++i) tr += x(i, i);
    best = std::max(best, tr.real() / nuc);
  }
  return best;
}

MinimaxResult ideal_gmres(const Matrix& a, std::size_t k, const SolverOptions& opts) {
  check_problem(a, k, "ideal_gmres");
  const IdealObjective obj(a, k);
  const auto run = run_ideal(a, obj, k, opts, opts.starts, true);

  std::vector<double> probe_floor;
  auto lower_bound_for = [&](const ResidualPolynomial& p, std::span<const cplx> witness) {
    if (probe_floor.empty()) {
      double lb = 0.0;
      for (int i = 0; i < opts.lower_bound_probes; ++i) {
        Rng rng = make_rng(opts.seed, kProbeStream + static_cast<std::uint64_t>(i));
        lb = std::max(lb, min_residual_over_polys(a, random_vector(rng, a.rows()), k).value);
      }
      probe_floor.push_back(lb);
    }
    return std::max({probe_floor[0], min_residual_over_polys(a, witness, k).value, ideal_dual_lower_bound(a, p)});
  };

  MinimaxResult out;
  out.starts_used = run.starts_used;
  LocalMin best = run.best;
  for (int round = 0;; ++round) {
    out.coefficients = obj.to_poly(best.x);
    const auto sp = top_singular_pair(evaluate_residual_polynomial(a, *out.coefficients));
    out.upper_bound = sp.sigma;
    out.value = sp.sigma;
    out.witness_vector = sp.right;
    out.lower_bound = std::min(lower_bound_for(*out.coefficients, out.witness_vector), out.upper_bound);
    out.certified = out.gap() <= opts.tolerance;
    if (out.certified || round >= opts.polish_rounds) break;
    // Continue the best start where the iteration cap cut it off; once it
    // stalls on a kink, one restart with a fresh Hessian gets a last chance.
    const bool fresh = best.stalled;
    LocalMin next = bfgs_minimize(obj, best.x, opts, fresh ? std::vector<double>{} : best.hinv);
    if (!(next.f < best.f) && fresh) break;
    if (next.f < best.f || !fresh) best = std::move(next);
  }
  return out;
}

MinimaxResult worst_case_gmres(const Matrix& a, std::size_t k, const SolverOptions& opts,
                               std::span<const CVector> extra_starts) {
  check_problem(a, k, "worst_case_gmres");
  const std::size_t n = a.rows();
  std::vector<CVector> starts;
  for (const auto& v : extra_starts) {
    if (v.size() != n) throw LabError(ErrorCode::InvalidArgument, "worst_case_gmres: start length mismatch");
    if (norm2(v) > 0.0) starts.push_back(v);
  }
  for (int i = 0; i < opts.worst_case_starts; ++i) {
    Rng rng = make_rng(opts.seed, kWorstStream + static_cast<std::uint64_t>(i));
    starts.push_back(random_vector(rng, n));
  }
  if (starts.empty()) throw LabError(ErrorCode::InvalidArgument, "worst_case_gmres: no starting vectors");

  Ascent best;
  bool have = false;
  for (const auto& v0 : starts) {
    Ascent r = ascend(a, k, v0, opts);
    if (!have || r.f > best.f) {
      best = std::move(r);
      have = true;
    }
  }

  // Quasi-Newton polish of the best ascent with the exact gradient.
  {
    const WorstCaseObjective obj(a, k);
    const LocalMin m = bfgs_minimize(obj, WorstCaseObjective::from_vector(normalized(best.v)), opts);
    CVector v = WorstCaseObjective::to_vector(m.x);
    if (norm2(v) > 0.0) {
      v = normalized(v);
      const double f = fd_phi(a, v, k);
      if (f > best.f) best = {std::move(v), f};
    }
  }

  const auto fit = min_residual_over_polys(a, best.v, k);
  MinimaxResult out;
  out.value = best.f;
  out.lower_bound = best.f;
  out.upper_bound = std::max(std::min(1.0, ideal_objective(a, fit.poly)), best.f);
  out.witness_vector = std::move(best.v);
  out.starts_used = static_cast<int>(starts.size());
  out.certified = out.gap() <= opts.tolerance;
  return out;
}

OneStepIdeal one_step_ideal(const Matrix& a, const SolverOptions& opts) {
  check_problem(a, 1, "one_step_ideal");
  const IdealObjective obj(a, 1);
  const auto run = run_ideal(a, obj, 1, opts, opts.starts, false);
  const auto p = obj.to_poly(run.best.x);
  return {run.best.f, -p.coeffs[0]};
}

namespace {

// Lawson's iteratively reweighted least squares for the discrete complex
// Chebyshev problem. Each weighted fit also yields the lower bound
// sqrt(min_c sum_i w_i |p(lambda_i)|^2); iteration stops once the bracket closes.
double lawson_minimax(std::span<const cplx> nodes, std::size_t k) {
  const std::size_t m = nodes.size();
  double big = 0.0;
  for (const cplx z : nodes) big = std::max(big, std::abs(z));
  std::vector<cplx> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = nodes[i] / big;  // coefficients rescale, values do not

  std::vector<double> w(m, 1.0 / static_cast<double>(m)), err(m);
  double upper = 1.0, lower = 0.0;
  for (int it = 0; it < 200000; ++it) {
    Matrix normal(k), rhs(k, 1);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<cplx> pw(k);
      pw[0] = z[i];
      for (std::size_t j = 1; j < k; ++j) pw[j] = pw[j - 1] * z[i];
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) normal(r, c) += w[i] * std::conj(pw[r]) * pw[c];
        rhs(r, 0) -= w[i] * std::conj(pw[r]);
      }
    }
    Matrix coef;
    try {
      coef = solve_linear(normal, rhs);
    } catch (const LabError&) {
      break;
    }
    double sum_we = 0.0, weighted_sq = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      cplx acc{};
      for (std::size_t j = k; j-- > 0;) acc = (acc + coef(j, 0)) * z[i];
      err[i] = std::abs(acc + 1.0);
      worst = std::max(worst, err[i]);
      weighted_sq += w[i] * err[i] * err[i];
      sum_we += w[i] * err[i];
    }
    upper = std::min(upper, worst);
    lower = std::max(lower, std::sqrt(weighted_sq));
    if (upper - lower <= 1e-12 || sum_we == 0.0) break;
    for (std::size_t i = 0; i < m; ++i) w[i] = w[i] * err[i] / sum_we;
  }
  return upper;
}

}  // namespace

double scalar_minimax_oracle(std::span<const cplx> eigenvalues, std::size_t k) {
  if (k == 0) throw LabError(ErrorCode::InvalidArgument, "scalar_minimax_oracle: depth must be >= 1");
  if (k > 3 || eigenvalues.size() > 12 || eigenvalues.empty())
    throw LabError(ErrorCode::BudgetExceeded, "scalar_minimax_oracle: outside the oracle budget");

  const std::size_t dim = 2 * k;
  auto value = [&](std::span<const double> x) {
    double worst = 0.0;
    for (const cplx lam : eigenvalues) {
      cplx acc{};
      for (std::size_t j = k; j-- > 0;) acc = (acc + cplx(x[2 * j], x[2 * j + 1])) * lam;
      worst = std::max(worst, std::abs(acc + 1.0));
    }
    return worst;
  };

  double mod_min = std::numeric_limits<double>::infinity();
  for (const cplx lam : eigenvalues)
    if (std::abs(lam) > 0.0) mod_min = std::min(mod_min, std::abs(lam));
  if (std::isinf(mod_min)) return 1.0;  // A = 0: p(0) = 1 everywhere

  std::vector<double> radius(dim);
  for (std::size_t j = 0; j < k; ++j)
    radius[2 * j] = radius[2 * j + 1] = 1.5 * binomial(k, j + 1) / std::pow(mod_min, static_cast<double>(j + 1));

  const int per_axis = k == 1 ? 81 : (k == 2 ? 21 : 9);
  std::vector<std::pair<double, std::vector<double>>> seeds;
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  const std::size_t keep = 6;
  while (true) {
    for (std::size_t d = 0; d < dim; ++d)
      x[d] = radius[d] * (-1.0 + 2.0 * idx[d] / static_cast<double>(per_axis - 1));
    const double f = value(x);
    if (seeds.size() < keep || f < seeds.back().first) {
      seeds.emplace_back(f, x);
      std::sort(seeds.begin(), seeds.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
      if (seeds.size() > keep) seeds.pop_back();
    }
    std::size_t d = 0;
    while (d < dim && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == dim) break;
  }

  // Pattern search: coordinate directions plus fresh random directions.
  Rng rng(0x0badc0deULL);
  std::normal_distribution<double> normal;
  double best = seeds.front().first;
  for (auto& [f0, x0] : seeds) {
    std::vector<double> cur = x0;
    double fc = f0;
    double step = 2.0 * radius[0] / static_cast<double>(per_axis - 1);
    const double floor = 1e-14 * radius[0];
    std::vector<double> dir(dim), trial(dim);
    int evals = 0;
    while (step > floor && evals < 400000) {
      bool moved = false;
      for (std::size_t pass = 0; pass < 4 * dim && !moved; ++pass) {
        if (pass < 2 * dim) {
          std::fill(dir.begin(), dir.end(), 0.0);
          dir[pass / 2] = (pass % 2 == 0) ? 1.0 : -1.0;
        } else {
          double nd = 0.0;
          for (auto& c : dir) {
            c = normal(rng);
            nd += c * c;
          }
          for (auto& c : dir) c /= std::sqrt(nd);
        }
        for (std::size_t d = 0; d < dim; ++d) trial[d] = cur[d] + step * dir[d] * radius[d] / radius[0];
        const double ft = value(trial);
        ++evals;
        if (ft < fc) {
          cur = trial;
          fc = ft;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::min(best, fc);
  }

  // Distinct nodes: with at most k of them the residual polynomial can
  // interpolate zero everywhere.
  std::vector<cplx> distinct;
  for (const cplx lam : eigenvalues)
    if (std::none_of(distinct.begin(), distinct.end(), [&](cplx d) { return std::abs(d - lam) <= 1e-14 * std::abs(lam); }))
      distinct.push_back(lam);
  if (std::any_of(distinct.begin(), distinct.end(), [](cplx d) { return d == cplx{}; })) return std::min(best, 1.0);
  if (distinct.size() <= k) return 0.0;
  return std::min(best, lawson_minimax(distinct, k));
}

}  // namespace gmreslab
