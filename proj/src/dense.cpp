#include "gmreslab/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square() || m.rows() == 0)
    throw LabError(ErrorCode::InvalidArgument, std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw LabError(ErrorCode::InvalidArgument, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const cplx> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CVector Matrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Matrix::set_column(std::size_t j, std::span<const cplx> values) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(cplx scale, Matrix m) { return m *= scale; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows())
    throw LabError(ErrorCode::InvalidArgument, "matrix product: inner dimensions differ");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      auto rrow = rhs.row(k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) orow[j] += a * rrow[j];
    }
  }
  return out;
}

CVector operator*(const Matrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size())
    throw LabError(ErrorCode::InvalidArgument, "matrix-vector product: dimension mismatch");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s{};
    auto r = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  cplx s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * x[i];
  return s;
}

double norm2(std::span<const cplx> v) {
  // scaled accumulation to avoid overflow on large entries
  double scale = 0.0;
  for (const cplx& z : v) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

double frobenius_norm(const Matrix& m) { return norm2(m.data()); }

double inf_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (const cplx& z : m.row(i)) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

CVector normalized(std::span<const cplx> v) {
  const double nv = norm2(v);
  if (nv == 0.0) throw LabError(ErrorCode::ZeroVector, "cannot normalize the zero vector");
  CVector out(v.begin(), v.end());
  for (auto& z : out) z /= nv;
  return out;
}

const Tolerances& default_tolerances() noexcept {
  static const Tolerances tol{};
  return tol;
}

Matrix hermitian_part(const Matrix& a) {
  require_square(a, "hermitian_part");
  const std::size_t n = a.rows();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      m(i, j) = h;
      m(j, i) = std::conj(h);
    }
  }
  return m;
}

Matrix gram(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx s{};
      for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, i)) * a(r, j);
      if (i == j) {
        g(i, i) = s.real();
      } else {
        g(i, j) = s;
        g(j, i) = std::conj(s);
      }
    }
  }
  return g;
}

EigenSpectrum eig_hermitian(const Matrix& m, const Tolerances& tol) {
  require_square(m, "eig_hermitian");
  const std::size_t n = m.rows();
  const double scale = frobenius_norm(m);

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
  if (asym > tol.hermitian_check * scale)
    throw LabError(ErrorCode::NotHermitian, "eig_hermitian: matrix is not Hermitian");

  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);
  const double threshold = tol.jacobi_offdiag * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  bool converged = off_norm() <= threshold;
  while (!converged && sweep < tol.jacobi_max_sweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;
        const cplx phase_c = std::conj(phase);

        // Real symmetric rotation on [[app, r], [r, aqq]] after the phase
        // change that makes the (p, q) entry real.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U e_p = c e_p - s conj(phase) e_q,  U e_q = s e_p + c conj(phase) e_q
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phase_c * akq;
          a(k, q) = s * akp + c * phase_c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_c * vkq;
          v(k, q) = s * vkp + c * phase_c * vkq;
        }
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged)
    throw LabError(ErrorCode::NoConvergence, "eig_hermitian: Jacobi sweep limit reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenSpectrum out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  out.sweeps = sweep;
  for (std::size_t idx = 0; idx < n; ++idx) {
    out.values[idx] = a(order[idx], order[idx]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, idx) = v(k, order[idx]);
  }
  return out;
}

double spectral_norm(const Matrix& a) {
  require_square(a, "spectral_norm");
  const auto spec = eig_hermitian(gram(a));
  return std::sqrt(std::max(spec.values.back(), 0.0));
}

SingularPair top_singular_pair(const Matrix& a) {
  const auto spec = eig_hermitian(gram(a));
  const std::size_t top = spec.values.size() - 1;
  SingularPair sp;
  sp.sigma = std::sqrt(std::max(spec.values[top], 0.0));
  sp.right = spec.vectors.column(top);
  if (sp.sigma > 0.0) {
    sp.left = a * sp.right;
    const double nl = norm2(sp.left);
    for (auto& z : sp.left) z /= nl;
  } else {
    sp.left = CVector(a.rows());
    sp.left[0] = 1.0;
  }
  return sp;
}

Matrix solve_linear(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  require_square(a, "solve_linear");
  const std::size_t n = a.rows();
  if (b.rows() != n)
    throw LabError(ErrorCode::InvalidArgument, "solve_linear: right-hand side does not conform");

  Matrix lu = a;
  Matrix x = b;
  const double pivot_floor = tol.singular_pivot * inf_norm(a);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > best) {
        best = std::abs(lu(r, col));
        piv = r;
      }
    }
    if (best <= pivot_floor)
      throw LabError(ErrorCode::SingularMatrix, "solve_linear: matrix is numerically singular");
    if (piv != col) {
      std::swap_ranges(lu.row(col).begin(), lu.row(col).end(), lu.row(piv).begin());
      std::swap_ranges(x.row(col).begin(), x.row(col).end(), x.row(piv).begin());
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = lu(r, col) / lu(col, col);
      if (f == cplx{}) continue;
      for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(r, j) -= f * x(col, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      cplx s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * x(k, j);
      x(ii, j) = s / lu(ii, ii);
    }
  }
  return x;
}

CVector solve_linear(const Matrix& a, std::span<const cplx> b, const Tolerances& tol) {
  Matrix rhs(b.size(), 1);
  rhs.set_column(0, b);
  return solve_linear(a, rhs, tol).column(0);
}

Matrix inverse(const Matrix& a, const Tolerances& tol) {
  require_square(a, "inverse");
  return solve_linear(a, Matrix::identity(a.rows()), tol);
}

cplx ResidualPolynomial::operator()(cplx z) const {
  cplx acc{};
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc + coeffs[j]) * z;
  return acc + 1.0;
}

Matrix evaluate_residual_polynomial(const Matrix& a, const ResidualPolynomial& p) {
  require_square(a, "evaluate_residual_polynomial");
  const std::size_t n = a.rows();
  // p(A) = I + A(c1 I + A(c2 I + ... + A(ck I)))
  Matrix acc(n);
  for (std::size_t j = p.degree(); j-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeffs[j];
    acc = a * acc;
  }
  for (std::size_t i = 0; i < n; ++i) acc(i, i) += 1.0;
  return acc;
}

}  // namespace gmreslab
