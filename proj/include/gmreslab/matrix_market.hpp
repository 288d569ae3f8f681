#pragma once

#include <filesystem>
#include <iosfwd>

#include "gmreslab/dense.hpp"

namespace gmreslab {

/// Reads coordinate or array Matrix Market data with real or complex fields.
/// Symmetric, hermitian and skew-symmetric storage is expanded to dense.
/// Throws ParseError (with line number), UnsupportedFormat or FileError.
Matrix read_matrix_market(const std::filesystem::path& path);
Matrix read_matrix_market(std::istream& in);

/// Writes `array general` storage, `real` when every entry has zero imaginary
/// part and `complex` otherwise. Numbers use the shortest round-trip form.
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);
void write_matrix_market(std::ostream& out, const Matrix& a);

}  // namespace gmreslab
