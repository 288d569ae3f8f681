#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gmreslab/dense.hpp"

namespace gmreslab {

enum class MatrixFamily { Identity, Diagonal, Jordan, Bidiagonal, RandomPdPart, NormalRandom, File };

const char* family_name(MatrixFamily f) noexcept;

struct MatrixSpec {
  MatrixFamily family = MatrixFamily::Identity;
  std::size_t n = 0;
  std::vector<cplx> values;  // diagonal entries (diagonal, bidiagonal)
  cplx lambda{1.0};          // jordan eigenvalue
  cplx superdiag{1.0};       // bidiagonal off-diagonal
  double shift = 1.0;        // random_pd_part: A = shift I + spread G
  double spread = 1.0;
  std::uint64_t seed = 0;
  std::string path;          // file
};

/// Compact text form:
///   identity:N  diagonal:d1,d2,..  jordan:LAMBDA,N  bidiagonal:d1,d2,..;S
///   random_pd_part:N,SHIFT,SPREAD,SEED  normal_random:N,SEED
/// Anything else is taken as a Matrix Market path. Throws InvalidSpec.
MatrixSpec parse_matrix_spec(std::string_view text);

/// Spec as a JSON object string (reals with 17 significant digits).
std::string matrix_spec_json(const MatrixSpec& spec);

/// Deterministic for a given spec. random_pd_part resamples G until the
/// Hermitian part is positive definite. Throws InvalidSpec or FileError.
Matrix generate_matrix(const MatrixSpec& spec);

}  // namespace gmreslab
