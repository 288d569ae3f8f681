#include <doctest.h>

#include "gmreslab/bounds.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/random.hpp"
#include "oracles.hpp"

using namespace gmreslab;
using C = cplx;

TEST_CASE("Elman bound: examples") {
  CHECK(*elman_bound(Matrix::identity(3), 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(*elman_bound(Matrix::diagonal(std::vector<C>{1, 2}), 1) == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(*elman_bound(Matrix::diagonal(std::vector<C>{1, 2}), 2) == doctest::Approx(0.75));
  CHECK_FALSE(elman_bound(Matrix{{0, 1}, {-1, 0}}, 1).has_value());
  CHECK_FALSE(elman_bound(Matrix::diagonal(std::vector<C>{1, -1}), 1).has_value());
}

TEST_CASE("Starke bound: examples") {
  CHECK(starke_bound(Matrix::identity(3), 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(starke_bound(Matrix::diagonal(std::vector<C>{1, 2}), 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(starke_bound(Matrix::diagonal(std::vector<C>{C(0, 1), C(0, -1)}), 3) == 1.0);
  CHECK(starke_bound(Matrix{{1, 1}, {0, 1}}, 1) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
  try {
    starke_bound(Matrix{{1, 2}, {2, 4}}, 1);
    FAIL("expected SingularMatrix");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("verify_chain: examples") {
  SUBCASE("identity") {
    const auto r = verify_chain(Matrix::identity(3), 1, 5);
    CHECK(r.all_passed());
    CHECK(r.ideal <= 1e-12);
    CHECK(r.starke_rhs <= 1e-12);
    REQUIRE(r.elman_rhs.has_value());
    CHECK(*r.elman_rhs <= 1e-12);
  }
  SUBCASE("diag(1,2)") {
    const auto r = verify_chain(Matrix::diagonal(std::vector<C>{1, 2}), 1, 10);
    CHECK(r.all_passed());
    CHECK(r.ideal == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(r.starke_rhs == doctest::Approx(std::sqrt(0.5)));
    CHECK(*r.elman_rhs == doctest::Approx(std::sqrt(0.75)));
    CHECK(r.verdicts.size() == 5);
  }
  SUBCASE("Jordan block") {
    const auto r = verify_chain(Matrix{{1, 1}, {0, 1}}, 1, 10);
    CHECK(r.nu_A == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.nu_Ainv == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.starke_rhs == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(r.all_passed());
  }
  SUBCASE("Elman inapplicable") {
    const auto r = verify_chain(Matrix{{1, 3}, {-3, 1}}, 1, 3);
    const auto r2 = verify_chain(Matrix::diagonal(std::vector<C>{C(1, 2), C(-0.5, 1)}), 1, 3);
    CHECK(r.all_passed());
    CHECK_FALSE(r2.elman_rhs.has_value());
    for (const auto& v : r2.verdicts)
      if (v.name == "ideal_le_elman" || v.name == "starke_le_elman") CHECK_FALSE(v.applicable);
  }
  SUBCASE("depth outside [1, n]") {
    CHECK_THROWS_AS(verify_chain(Matrix::identity(2), 3, 1), LabError);
    CHECK_THROWS_AS(verify_chain(Matrix::identity(2), 0, 1), LabError);
  }
}

TEST_CASE("bounds lie in [0, 1], decrease with k and respect their ordering") {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 8;
    const Matrix a = suite::shifted_gaussian(41, t, n, 1.0 + 0.1 * static_cast<double>(t % 5));
    double prev_s = 1.0, prev_e = 1.0;
    for (std::size_t k = 1; k <= 5; ++k) {
      const double s = starke_bound(a, k);
      const auto e = elman_bound(a, k);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s <= prev_s + 1e-15);
      prev_s = s;
      if (e) {
        CHECK(*e >= 0.0);
        CHECK(*e <= 1.0);
        CHECK(*e <= prev_e + 1e-15);
        CHECK(s <= *e + 1e-8);
        prev_e = *e;
      }
    }
  }
}

TEST_CASE("bounds are invariant under unitary similarity") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const std::size_t n = 3 + t % 5;
    const Matrix a = suite::shifted_gaussian(42, t, n, 1.5);
    auto rng = make_rng(43, t);
    const oracle::CMat q = Eigen::HouseholderQR<oracle::CMat>(oracle::to_eigen(random_matrix(rng, n))).householderQ();
    const Matrix b = oracle::from_eigen(q * oracle::to_eigen(a) * q.adjoint());
    CHECK(std::abs(starke_bound(a, 2) - starke_bound(b, 2)) <= 1e-8);
    const auto ea = elman_bound(a, 2), eb = elman_bound(b, 2);
    REQUIRE(ea.has_value() == eb.has_value());
    if (ea) CHECK(std::abs(*ea - *eb) <= 1e-8);
  }
}

TEST_CASE("verify_chain passes on random matrices and honours custom slacks") {
  SolverOptions o;
  o.worst_case_starts = 6;
  for (std::uint64_t t = 0; t < 6; ++t) {
    const std::size_t n = 3 + t % 4;
    const Matrix a = suite::shifted_gaussian(44, t, n, 1.0);
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto r = verify_chain(a, k, 10, o);
      CHECK(r.all_passed());
      CHECK(r.gmres_min <= r.gmres_median);
      CHECK(r.gmres_median <= r.gmres_max);
      CHECK(r.gmres_ratio == r.gmres_max);
      for (const auto& v : r.verdicts)
        if (v.applicable) CHECK(v.margin == doctest::Approx(v.rhs + v.slack - v.lhs));
    }
  }
  // a negative slack on an exact equality forces a failure
  ChainSlacks s;
  s.ideal_vs_starke = -1.0;
  const auto r = verify_chain(Matrix::diagonal(std::vector<C>{1, 2}), 1, 3, {}, s);
  CHECK_FALSE(r.all_passed());
}
