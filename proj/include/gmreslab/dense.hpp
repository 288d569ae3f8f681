#pragma once

// Dense complex kernels for desk-scale matrices (n up to a few hundred).
//
// Inner products follow <x, y> = y^H x throughout the library.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gmreslab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Row-major dense complex matrix. Most operations require it to be square;
/// rectangular shapes only appear as intermediate bases (Arnoldi, QR).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  explicit Matrix(std::size_t n) : Matrix(n, n) {}
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const cplx> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> data() const noexcept { return data_; }

  CVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const cplx> values);

  Matrix adjoint() const;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx scale);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(cplx scale, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
CVector operator*(const Matrix& m, std::span<const cplx> v);

/// <x, y> = y^H x.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> v);
double frobenius_norm(const Matrix& m);
double inf_norm(const Matrix& m);
/// Returns v / ||v||; throws ZeroVector for v == 0.
CVector normalized(std::span<const cplx> v);

/// Tolerances shared by the kernels; each is relative to the natural scale
/// noted beside it.
struct Tolerances {
  double hermitian_check = 1e-12;   // x ||M||_F
  double jacobi_offdiag = 1e-13;    // x ||M||_F
  int jacobi_max_sweeps = 100;
  double singular_pivot = 1e-14;    // x ||A||_inf
  double arnoldi_breakdown = 1e-13; // x ||A||_2
  double positive_definite = 1e-12; // x ||M||_2
};

const Tolerances& default_tolerances() noexcept;

/// Eigenvalues ascending; column i of `vectors` pairs with values[i].
struct EigenSpectrum {
  std::vector<double> values;
  Matrix vectors;
  int sweeps = 0;
};

/// 1/2 (A + A^H), stored exactly Hermitian.
Matrix hermitian_part(const Matrix& a);

/// A^H A, stored exactly Hermitian.
Matrix gram(const Matrix& a);

/// Cyclic complex Jacobi. Throws NotHermitian or NoConvergence.
EigenSpectrum eig_hermitian(const Matrix& m, const Tolerances& tol = default_tolerances());

/// sigma_max(A) = sqrt(lambda_max(A^H A)).
double spectral_norm(const Matrix& a);

struct SingularPair {
  double sigma = 0.0;
  CVector left;   // unit u with A v = sigma u
  CVector right;  // unit v
};

/// Largest singular value with its singular vectors, from the eigendecomposition
/// of A^H A. Ties pick the eigenvector the eigensolver sorts last.
SingularPair top_singular_pair(const Matrix& a);

/// Partial-pivot LU solve of A X = B. Throws SingularMatrix when a pivot falls
/// below tol.singular_pivot * ||A||_inf.
Matrix solve_linear(const Matrix& a, const Matrix& b, const Tolerances& tol = default_tolerances());
CVector solve_linear(const Matrix& a, std::span<const cplx> b,
                     const Tolerances& tol = default_tolerances());
Matrix inverse(const Matrix& a, const Tolerances& tol = default_tolerances());

/// p(z) = 1 + c_1 z + ... + c_k z^k, so that p(0) = 1 always holds.
struct ResidualPolynomial {
  std::vector<cplx> coeffs;  // c_1 .. c_k

  std::size_t degree() const noexcept { return coeffs.size(); }
  cplx operator()(cplx z) const;
};

/// Horner evaluation of p(A). Monomial basis; reliable up to degree ~8.
Matrix evaluate_residual_polynomial(const Matrix& a, const ResidualPolynomial& p);

}  // namespace gmreslab
