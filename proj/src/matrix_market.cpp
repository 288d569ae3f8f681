#include "gmreslab/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

enum class Layout { Coordinate, Array };
enum class Field { Real, Complex };
enum class Symmetry { General, Symmetric, Hermitian, Skew };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid number '" + std::string(tok) + "'");
  return x;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t x = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid integer '" + std::string(tok) + "'");
  return x;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor a comment.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }
  std::size_t number() const noexcept { return number_; }
  std::size_t advance_raw(std::string& line) {
    if (!std::getline(in_, line)) return 0;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return number_;
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

void place(Matrix& a, std::size_t i, std::size_t j, cplx v, Symmetry sym, bool accumulate) {
  if (accumulate)
    a(i, j) += v;
  else
    a(i, j) = v;
  if (i == j) return;
  const cplx mirrored = sym == Symmetry::Symmetric ? v
                        : sym == Symmetry::Hermitian ? std::conj(v)
                        : sym == Symmetry::Skew     ? -v
                                                    : cplx{};
  if (sym == Symmetry::General) return;
  if (accumulate)
    a(j, i) += mirrored;
  else
    a(j, i) = mirrored;
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.advance_raw(line)) throw ParseError(1, "empty input");
  const auto head = tokens(line);
  if (head.size() != 5 || lower(std::string(head[0])) != "%%matrixmarket")
    throw ParseError(1, "missing %%MatrixMarket banner");
  if (lower(std::string(head[1])) != "matrix")
    throw LabError(ErrorCode::UnsupportedFormat, "only 'matrix' objects are supported");

  Layout layout;
  const std::string fmt = lower(std::string(head[2]));
  if (fmt == "coordinate")
    layout = Layout::Coordinate;
  else if (fmt == "array")
    layout = Layout::Array;
  else
    throw ParseError(1, "unknown format '" + fmt + "'");

  Field field;
  const std::string fld = lower(std::string(head[3]));
  if (fld == "real")
    field = Field::Real;
  else if (fld == "complex")
    field = Field::Complex;
  else if (fld == "integer" || fld == "pattern")
    throw LabError(ErrorCode::UnsupportedFormat, "field '" + fld + "' is not supported");
  else
    throw ParseError(1, "unknown field '" + fld + "'");

  Symmetry sym;
  const std::string sy = lower(std::string(head[4]));
  if (sy == "general")
    sym = Symmetry::General;
  else if (sy == "symmetric")
    sym = Symmetry::Symmetric;
  else if (sy == "hermitian")
    sym = Symmetry::Hermitian;
  else if (sy == "skew-symmetric")
    sym = Symmetry::Skew;
  else
    throw ParseError(1, "unknown symmetry '" + sy + "'");

  if (!reader.next(line)) throw ParseError(reader.number() + 1, "missing size line");
  const auto size = tokens(line);
  const std::size_t size_line = reader.number();
  if (size.size() != (layout == Layout::Coordinate ? 3u : 2u)) throw ParseError(size_line, "malformed size line");
  const std::size_t rows = parse_index(size[0], size_line);
  const std::size_t cols = parse_index(size[1], size_line);
  if (rows == 0 || cols == 0) throw ParseError(size_line, "matrix dimensions must be positive");
  if (sym != Symmetry::General && rows != cols)
    throw ParseError(size_line, "symmetric storage requires a square matrix");

  const std::size_t per_value = field == Field::Complex ? 2 : 1;
  Matrix a(rows, cols);

  auto read_value = [&](const std::vector<std::string_view>& t, std::size_t offset, std::size_t ln) {
    const double re = parse_real(t[offset], ln);
    const double im = field == Field::Complex ? parse_real(t[offset + 1], ln) : 0.0;
    return cplx{re, im};
  };

  if (layout == Layout::Coordinate) {
    const std::size_t nnz = parse_index(size[2], size_line);
    for (std::size_t e = 0; e < nnz; ++e) {
      if (!reader.next(line)) throw ParseError(reader.number() + 1, "expected " + std::to_string(nnz) + " entries");
      const std::size_t ln = reader.number();
      const auto t = tokens(line);
      if (t.size() != 2 + per_value) throw ParseError(ln, "wrong number of fields in entry");
      const std::size_t i = parse_index(t[0], ln);
      const std::size_t j = parse_index(t[1], ln);
      if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError(ln, "index out of range");
      if (sym != Symmetry::General && i < j) throw ParseError(ln, "entry above the diagonal in symmetric storage");
      const cplx v = read_value(t, 2, ln);
      if (sym == Symmetry::Skew && i == j && v != cplx{}) throw ParseError(ln, "nonzero diagonal in skew-symmetric storage");
      if (sym == Symmetry::Hermitian && i == j && v.imag() != 0.0)
        throw ParseError(ln, "complex diagonal in hermitian storage");
      // Duplicate coordinates are summed.
      place(a, i - 1, j - 1, v, sym, true);
    }
  } else {
    // Column-major; symmetric variants store the lower triangle only.
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t first = sym == Symmetry::General ? 0 : sym == Symmetry::Skew ? j + 1 : j;
      for (std::size_t i = first; i < rows; ++i) {
        if (!reader.next(line)) throw ParseError(reader.number() + 1, "array data ended early");
        const std::size_t ln = reader.number();
        const auto t = tokens(line);
        if (t.size() != per_value) throw ParseError(ln, "wrong number of fields in entry");
        const cplx v = read_value(t, 0, ln);
        if (sym == Symmetry::Hermitian && i == j && v.imag() != 0.0)
          throw ParseError(ln, "complex diagonal in hermitian storage");
        place(a, i, j, v, sym, false);
      }
    }
  }
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing data");
  return a;
}

Matrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorCode::FileError, "cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
  const bool complex = std::any_of(a.data().begin(), a.data().end(), [](cplx z) { return z.imag() != 0.0; });
  auto number = [](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  out << "%%MatrixMarket matrix array " << (complex ? "complex" : "real") << " general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      out << number(a(i, j).real());
      if (complex) out << ' ' << number(a(i, j).imag());
      out << '\n';
    }
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw LabError(ErrorCode::FileError, "cannot write '" + path.string() + "'");
  write_matrix_market(out, a);
  if (!out) throw LabError(ErrorCode::FileError, "write failed for '" + path.string() + "'");
}

}  // namespace gmreslab
