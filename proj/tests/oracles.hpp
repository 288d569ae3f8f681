// Reference computations built on Eigen, independent of the library kernels.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gmreslab/dense.hpp"
#include "gmreslab/random.hpp"

namespace oracle {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat to_eigen(const gmreslab::Matrix& a) {
  CMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

inline gmreslab::Matrix from_eigen(const CMat& m) {
  gmreslab::Matrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

inline CVec to_eigen(const gmreslab::CVector& v) {
  CVec e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i];
  return e;
}

inline double spectral_norm(const CMat& m) {
  return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
}

inline Eigen::VectorXd hermitian_eigenvalues(const CMat& h) {
  return Eigen::SelfAdjointEigenSolver<CMat>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

// p(A) = I + sum c_j A^j by explicit powers.
inline CMat poly_of(const CMat& a, const std::vector<std::complex<double>>& c) {
  CMat p = CMat::Identity(a.rows(), a.cols());
  CMat pw = CMat::Identity(a.rows(), a.cols());
  for (const auto& cj : c) {
    pw = pw * a;
    p += cj * pw;
  }
  return p;
}

// min_c || r0 + [A r0 .. A^k r0] c || / ||r0|| through a dense least squares
// solve on the (unorthogonalized) Krylov matrix.
inline double krylov_residual(const CMat& a, const CVec& r0, int k) {
  CMat kry(a.rows(), k);
  CVec w = r0;
  for (int j = 0; j < k; ++j) {
    w = a * w;
    kry.col(j) = w;
  }
  const CVec c = kry.colPivHouseholderQr().solve(-r0);
  return (r0 + kry * c).norm() / r0.norm();
}

// Boundary of F(A) sampled through the top eigenvector of the rotated
// Hermitian part, then the distance from the origin to the convex hull of the
// samples (zero when the origin is inside).
inline double hull_distance(const CMat& a, int samples) {
  struct P {
    double x, y;
  };
  std::vector<P> pts;
  for (int s = 0; s < samples; ++s) {
    const double th = 2.0 * M_PI * s / samples;
    const std::complex<double> e = std::polar(1.0, -th);
    const CMat h = 0.5 * (e * a + std::conj(e) * a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const CVec v = es.eigenvectors().col(h.rows() - 1);
    const std::complex<double> z = v.dot(a * v);  // v^H A v
    pts.push_back({z.real(), z.imag()});
  }
  std::sort(pts.begin(), pts.end(), [](P p, P q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  auto cross = [](P o, P p, P q) { return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x); };
  std::vector<P> hull(2 * pts.size());
  std::size_t m = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (m >= 2 && cross(hull[m - 2], hull[m - 1], pts[i]) <= 0) --m;
    hull[m++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = m + 1; i-- > 0;) {
    while (m >= t && cross(hull[m - 2], hull[m - 1], pts[i]) <= 0) --m;
    hull[m++] = pts[i];
  }
  hull.resize(m > 1 ? m - 1 : m);
  if (hull.size() < 3) {
    // degenerate hull: segment or point
    double best = std::hypot(hull[0].x, hull[0].y);
    if (hull.size() == 2) {
      const P a0 = hull[0], b0 = hull[1];
      const double dx = b0.x - a0.x, dy = b0.y - a0.y, l2 = dx * dx + dy * dy;
      const double t = l2 > 0 ? std::clamp(-(a0.x * dx + a0.y * dy) / l2, 0.0, 1.0) : 0.0;
      best = std::hypot(a0.x + t * dx, a0.y + t * dy);
    }
    return best;
  }
  bool inside = true;
  double best = INFINITY;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P p = hull[i], q = hull[(i + 1) % hull.size()];
    if (cross(p, q, P{0, 0}) < 0) inside = false;
    const double dx = q.x - p.x, dy = q.y - p.y, l2 = dx * dx + dy * dy;
    const double t = l2 > 0 ? std::clamp(-(p.x * dx + p.y * dy) / l2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(p.x + t * dx, p.y + t * dy));
  }
  return inside ? 0.0 : best;
}

}  // namespace oracle

namespace suite {

// Complex Gaussian matrix with entries of variance 1/n plus a diagonal shift.
inline gmreslab::Matrix shifted_gaussian(std::uint64_t seed, std::uint64_t index, std::size_t n, double shift) {
  auto rng = gmreslab::make_rng(seed, index);
  gmreslab::Matrix a = gmreslab::random_matrix(rng, n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) a(i, i) += shift;
  return a;
}

}  // namespace suite
