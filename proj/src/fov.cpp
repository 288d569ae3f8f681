#include "gmreslab/fov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kValueTie = 1e-14;

double support_floor(const Matrix& a, double theta) {
  return eig_hermitian(rotated_hermitian_part(a, theta)).values.front();
}

struct AnglePick {
  double angle;
  double value;
};

// Prefer the larger value; near-ties go to the smaller angle so the result
// does not depend on evaluation order.
bool better(const AnglePick& x, const AnglePick& y) {
  if (x.value > y.value + kValueTie) return true;
  if (y.value > x.value + kValueTie) return false;
  return x.angle < y.angle;
}

AnglePick golden_maximize(const Matrix& a, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = support_floor(a, x1);
  double f2 = support_floor(a, x2);
  while (hi - lo > width) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = support_floor(a, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = support_floor(a, x1);
    }
  }
  return f1 >= f2 ? AnglePick{x1, f1} : AnglePick{x2, f2};
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

cplx rayleigh(const Matrix& a, std::span<const cplx> v) {
  const double vv = std::norm(norm2(v));
  if (vv == 0.0) throw LabError(ErrorCode::ZeroVector, "rayleigh: zero vector");
  const CVector av = a * v;
  return inner(av, v) / vv;
}

Matrix rotated_hermitian_part(const Matrix& a, double theta) {
  const cplx rot = std::polar(1.0, -theta);
  const std::size_t n = a.rows();
  Matrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = (rot * a(i, i)).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx x = 0.5 * (rot * a(i, j) + std::conj(rot * a(j, i)));
      h(i, j) = x;
      h(j, i) = std::conj(x);
    }
  }
  return h;
}

SupportExtremes support_extremes(const Matrix& a, double theta) {
  if (!a.is_square() || a.empty())
    throw LabError(ErrorCode::InvalidArgument, "support_extremes: matrix must be square");
  const auto spec = eig_hermitian(rotated_hermitian_part(a, theta));
  const std::size_t n = spec.values.size();
  // Ties: lowest index from the sorted decomposition.
  std::size_t top = n - 1;
  while (top > 0 && spec.values[top - 1] == spec.values[n - 1]) --top;
  return {spec.values.front(), spec.values.back(), spec.vectors.column(0), spec.vectors.column(top)};
}

FovBoundary fov_boundary(const Matrix& a, std::size_t samples) {
  if (samples < 8) throw LabError(ErrorCode::InvalidArgument, "fov_boundary: need at least 8 samples");
  FovBoundary b;
  b.angles.reserve(samples);
  b.points.reserve(samples);
  b.support_max.reserve(samples);
  b.support_min.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    const auto ext = support_extremes(a, theta);
    b.angles.push_back(theta);
    b.points.push_back(rayleigh(a, ext.v_max));
    b.support_max.push_back(ext.lambda_max);
    b.support_min.push_back(ext.lambda_min);
  }
  return b;
}

NuResult nu_fov(const Matrix& a, const NuSearchOptions& opts) {
  if (!a.is_square() || a.empty())
    throw LabError(ErrorCode::InvalidArgument, "nu_fov: matrix must be square");
  const std::size_t m = std::max<std::size_t>(opts.coarse_angles, 3);
  const double cell = kTwoPi / static_cast<double>(m);

  std::vector<double> g(m);
  for (std::size_t j = 0; j < m; ++j) g[j] = support_floor(a, cell * static_cast<double>(j));

  AnglePick best{0.0, g[0]};
  for (std::size_t j = 1; j < m; ++j) {
    const AnglePick cand{cell * static_cast<double>(j), g[j]};
    if (better(cand, best)) best = cand;
  }

  // Refine around the strongest local maxima of the cyclic coarse scan.
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < m; ++j) {
    const double prev = g[(j + m - 1) % m];
    const double next = g[(j + 1) % m];
    if (g[j] >= prev && g[j] >= next) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) { return g[x] > g[y]; });
  if (peaks.size() > opts.refine_cells) peaks.resize(opts.refine_cells);

  for (std::size_t j : peaks) {
    const double center = cell * static_cast<double>(j);
    AnglePick refined = golden_maximize(a, center - cell, center + cell, opts.angular_width);
    refined.angle = wrap_angle(refined.angle);
    if (better(refined, best)) best = refined;
  }

  NuResult out;
  out.argmin_angle = best.angle;
  if (best.value > 0.0) {
    out.nu = best.value;
    out.witness = support_extremes(a, best.angle).v_min;
  }
  return out;
}

double nu_fov_inverse(const Matrix& a, const NuSearchOptions& opts) {
  return nu_fov(inverse(a), opts).nu;
}

FovSummary summarize_fov(const Matrix& a, std::size_t boundary_samples) {
  FovSummary s;
  const auto nu = nu_fov(a);
  s.nu_A = nu.nu;
  s.argmin_angle = nu.argmin_angle;
  s.witness_vector = nu.witness;
  s.nu_Ainv = nu_fov_inverse(a);
  s.lambda_min_M = eig_hermitian(hermitian_part(a)).values.front();
  if (boundary_samples > 0) s.boundary = fov_boundary(a, boundary_samples);
  return s;
}

}  // namespace gmreslab
