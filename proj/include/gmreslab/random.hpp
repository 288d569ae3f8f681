#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gmreslab/dense.hpp"

namespace gmreslab {

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(split_seed(seed, stream)); }

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
inline cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

inline CVector random_vector(Rng& rng, std::size_t n) {
  CVector v(n);
  for (auto& z : v) z = complex_gaussian(rng);
  return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * complex_gaussian(rng);
  return m;
}

}  // namespace gmreslab
