#include <doctest.h>

#include "gmreslab/dense.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/random.hpp"
#include "oracles.hpp"

using namespace gmreslab;
using C = cplx;

TEST_CASE("inner product is conjugate-linear in the second slot") {
  const CVector x{C(1, 2), C(0, -1)};
  const CVector y{C(3, 0), C(1, 1)};
  // y^H x = conj(3)(1+2i) + conj(1+i)(-i) = 3+6i + (1-i)(-i) = 3+6i -i -1
  const C v = inner(x, y);
  CHECK(v.real() == doctest::Approx(2.0));
  CHECK(v.imag() == doctest::Approx(5.0));
  CHECK(norm2(x) == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("normalized rejects the zero vector") {
  const CVector z(3);
  CHECK_THROWS_AS(normalized(z), LabError);
  try {
    normalized(z);
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
}

TEST_CASE("hermitian eigenvalues of small examples") {
  SUBCASE("diagonal") {
    const auto s = eig_hermitian(Matrix{{3, 0}, {0, 1}});
    CHECK(s.values[0] == doctest::Approx(1.0));
    CHECK(s.values[1] == doctest::Approx(3.0));
  }
  SUBCASE("complex 2x2") {
    const auto s = eig_hermitian(Matrix{{2, C(0, 1)}, {C(0, -1), 2}});
    CHECK(s.values[0] == doctest::Approx(1.0));
    CHECK(s.values[1] == doctest::Approx(3.0));
  }
  SUBCASE("non-Hermitian input is rejected") {
    CHECK_THROWS_AS(eig_hermitian(Matrix{{1, 2}, {0, 1}}), LabError);
  }
}

TEST_CASE("Jacobi eigensolver agrees with an independent solver") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 12;
    auto rng = make_rng(101, t);
    const Matrix g = random_matrix(rng, n);
    const Matrix h = hermitian_part(g);
    const auto s = eig_hermitian(h);
    const auto ref = oracle::hermitian_eigenvalues(oracle::to_eigen(h));
    const double scale = std::max(1.0, frobenius_norm(h));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s.values[i] - ref(i)) <= 1e-12 * scale);

    // residual ||H v - lambda v|| and orthonormality of the eigenvectors
    for (std::size_t i = 0; i < n; ++i) {
      const CVector v = s.vectors.column(i);
      CVector hv = h * v;
      for (std::size_t r = 0; r < n; ++r) hv[r] -= s.values[i] * v[r];
      CHECK(norm2(hv) <= 1e-11 * scale);
      for (std::size_t j = 0; j < n; ++j) {
        const C ip = inner(v, s.vectors.column(j));
        CHECK(std::abs(ip - C(i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
  }
}

TEST_CASE("spectral norm and top singular pair") {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 9;
    auto rng = make_rng(202, t);
    const Matrix a = random_matrix(rng, n);
    const double ref = oracle::spectral_norm(oracle::to_eigen(a));
    CHECK(spectral_norm(a) == doctest::Approx(ref).epsilon(1e-12));
    const auto sp = top_singular_pair(a);
    CHECK(sp.sigma == doctest::Approx(ref).epsilon(1e-12));
    CVector av = a * sp.right;
    for (std::size_t i = 0; i < n; ++i) av[i] -= sp.sigma * sp.left[i];
    CHECK(norm2(av) <= 1e-10 * std::max(1.0, ref));
  }
  CHECK(spectral_norm(Matrix(3)) == 0.0);
}

TEST_CASE("linear solves and inverse") {
  const Matrix a{{4, 1}, {2, 3}};
  const CVector b{C(1), C(2)};
  const CVector x = solve_linear(a, b);
  CHECK(x[0].real() == doctest::Approx(0.1));
  CHECK(x[1].real() == doctest::Approx(0.6));

  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 8;
    auto rng = make_rng(303, t);
    const Matrix m = random_matrix(rng, n);
    const Matrix prod = m * inverse(m);
    const Matrix diff = prod - Matrix::identity(n);
    CHECK(frobenius_norm(diff) <= 1e-9);
  }
  SUBCASE("singular matrix") {
    try {
      inverse(Matrix{{1, 2}, {2, 4}});
      FAIL("expected SingularMatrix");
    } catch (const LabError& e) {
      CHECK(e.code() == ErrorCode::SingularMatrix);
    }
  }
}

TEST_CASE("residual polynomial evaluation") {
  ResidualPolynomial p;
  CHECK(p(C(5)) == C(1));
  p.coeffs = {C(-3), C(2)};  // 1 - 3z + 2z^2 = (1 - z)(1 - 2z)
  CHECK(std::abs(p(C(1))) < 1e-15);
  CHECK(std::abs(p(C(0.5))) < 1e-15);
  const Matrix pa = evaluate_residual_polynomial(Matrix::diagonal(std::vector<C>{1, 0.5, 2}), p);
  CHECK(std::abs(pa(0, 0)) < 1e-15);
  CHECK(std::abs(pa(1, 1)) < 1e-15);
  CHECK(pa(2, 2).real() == doctest::Approx(3.0));

  for (std::uint64_t t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 6;
    auto rng = make_rng(404, t);
    const Matrix a = random_matrix(rng, n);
    ResidualPolynomial q;
    for (int j = 0; j < 4; ++j) q.coeffs.push_back(complex_gaussian(rng));
    const auto ref = oracle::poly_of(oracle::to_eigen(a), q.coeffs);
    const auto got = oracle::to_eigen(evaluate_residual_polynomial(a, q));
    CHECK((ref - got).norm() <= 1e-12 * std::max(1.0, ref.norm()));
  }
}

TEST_CASE("matrix shape helpers") {
  const Matrix a{{1, C(0, 2)}, {3, 4}};
  const Matrix ah = a.adjoint();
  CHECK(ah(0, 1) == C(3));
  CHECK(ah(1, 0) == C(0, -2));
  const Matrix m = hermitian_part(a);
  CHECK(m(0, 1) == std::conj(m(1, 0)));
  CHECK(m(0, 0).imag() == 0.0);
  CHECK(inf_norm(a) == doctest::Approx(7.0));
  CHECK(Matrix::identity(3) == Matrix::diagonal(std::vector<C>{1, 1, 1}));
  CHECK(a.all_finite());
}

TEST_CASE("hermitian part, eigenvalues, norms and solves: worked examples") {
  CHECK(hermitian_part(Matrix::identity(2)) == Matrix::identity(2));
  CHECK(hermitian_part(Matrix{{0, 2}, {0, 0}}) == Matrix{{0, 1}, {1, 0}});
  CHECK(hermitian_part(Matrix{{1, 1}, {-1, 1}}) == Matrix::identity(2));

  auto vals = eig_hermitian(Matrix::identity(2)).values;
  CHECK(vals == std::vector<double>{1.0, 1.0});
  vals = eig_hermitian(Matrix{{0, 1}, {1, 0}}).values;
  CHECK(vals[0] == doctest::Approx(-1.0));
  CHECK(vals[1] == doctest::Approx(1.0));
  vals = eig_hermitian(Matrix{{2, 1}, {1, 2}}).values;
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[1] == doctest::Approx(3.0));

  CHECK(spectral_norm(Matrix::identity(3)) == doctest::Approx(1.0));
  CHECK(spectral_norm(Matrix::diagonal(std::vector<C>{1, 2})) == doctest::Approx(2.0));
  CHECK(spectral_norm(Matrix{{0, 3}, {0, 0}}) == doctest::Approx(3.0));

  auto x = solve_linear(Matrix::identity(2), CVector{C(3), C(4)});
  CHECK(x == CVector{C(3), C(4)});
  x = solve_linear(Matrix::diagonal(std::vector<C>{2, 4}), CVector{C(2), C(4)});
  CHECK(x == CVector{C(1), C(1)});
  x = solve_linear(Matrix{{0, 1}, {1, 0}}, CVector{C(5), C(7)});
  CHECK(x == CVector{C(7), C(5)});

  CHECK(evaluate_residual_polynomial(Matrix{{1, 2}, {3, 4}}, ResidualPolynomial{}) == Matrix::identity(2));
  CHECK(frobenius_norm(evaluate_residual_polynomial(Matrix::identity(3), ResidualPolynomial{{C(-1)}})) == 0.0);
  CHECK(frobenius_norm(evaluate_residual_polynomial(Matrix::diagonal(std::vector<C>{1, 2}),
                                                    ResidualPolynomial{{C(-1.5), C(0.5)}})) <= 1e-15);
}

TEST_CASE("spectral norm dominates sampled ratios ||Av|| / ||v||") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 8;
    auto rng = make_rng(505, t);
    const Matrix a = random_matrix(rng, n);
    const double s = spectral_norm(a);
    double best = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CVector v = normalized(random_vector(rng, n));
      best = std::max(best, norm2(a * v));
    }
    CHECK(best <= s + 1e-10);
    // the top right singular vector attains the norm
    CHECK(norm2(a * top_singular_pair(a).right) == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("eigendecomposition reconstructs the matrix and preserves the trace") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 10;
    auto rng = make_rng(606, t);
    const Matrix m = hermitian_part(random_matrix(rng, n));
    const auto s = eig_hermitian(m);
    const double scale = std::max(1e-300, spectral_norm(m));
    double tr = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tr += m(i, i).real();
      sum += s.values[i];
    }
    CHECK(std::abs(tr - sum) <= 1e-10 * scale);
    std::vector<C> lam(s.values.begin(), s.values.end());
    const Matrix rec = s.vectors * Matrix::diagonal(lam) * s.vectors.adjoint();
    CHECK(frobenius_norm(rec - m) <= 1e-9 * scale);
  }
}

TEST_CASE("polynomial evaluation commutes with unitary similarity") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 7;
    auto rng = make_rng(707, t);
    const Matrix a = random_matrix(rng, n);
    const oracle::CMat qe = Eigen::HouseholderQR<oracle::CMat>(oracle::to_eigen(random_matrix(rng, n))).householderQ();
    const Matrix q = oracle::from_eigen(qe);
    ResidualPolynomial p;
    for (int j = 0; j < 3; ++j) p.coeffs.push_back(complex_gaussian(rng));
    const Matrix pa = evaluate_residual_polynomial(a, p);
    const Matrix lhs = evaluate_residual_polynomial(q * a * q.adjoint(), p);
    const Matrix rhs = q * pa * q.adjoint();
    CHECK(frobenius_norm(lhs - rhs) <= 1e-9 * (1.0 + spectral_norm(pa)));
  }
}
