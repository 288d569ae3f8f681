#include "gmreslab/generate.hpp"

#include <charconv>
#include <cmath>

#include "format.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/matrix_market.hpp"
#include "gmreslab/random.hpp"
#include "spec_json.hpp"

namespace gmreslab {

namespace {

constexpr int kMaxResamples = 1000;

[[noreturn]] void invalid(const std::string& what) { throw LabError(ErrorCode::InvalidSpec, what); }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) invalid("bad number '" + std::string(s) + "'");
  return x;
}

std::uint64_t to_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) invalid("bad integer '" + std::string(s) + "'");
  return x;
}

std::vector<cplx> real_list(std::string_view s) {
  std::vector<cplx> out;
  for (auto part : split(s, ',')) out.emplace_back(to_double(part));
  return out;
}

MatrixFamily family_from_name(std::string_view name) {
  for (auto f : {MatrixFamily::Identity, MatrixFamily::Diagonal, MatrixFamily::Jordan, MatrixFamily::Bidiagonal,
                 MatrixFamily::RandomPdPart, MatrixFamily::NormalRandom, MatrixFamily::File})
    if (name == family_name(f)) return f;
  invalid("unknown matrix family '" + std::string(name) + "'");
}

cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  invalid("expected a number or [re, im] pair");
}

// Unitary factor from Gram-Schmidt on a complex Gaussian matrix.
Matrix random_unitary(Rng& rng, std::size_t n) {
  Matrix q(n);
  std::vector<CVector> cols;
  while (cols.size() < n) {
    CVector v = random_vector(rng, n);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        const cplx h = inner(v, c);
        for (std::size_t r = 0; r < n; ++r) v[r] -= h * c[r];
      }
    if (norm2(v) < 1e-8) continue;
    cols.push_back(normalized(v));
  }
  for (std::size_t j = 0; j < n; ++j) q.set_column(j, cols[j]);
  return q;
}

void validate(const MatrixSpec& s) {
  switch (s.family) {
    case MatrixFamily::Identity:
    case MatrixFamily::Jordan:
    case MatrixFamily::NormalRandom:
      if (s.n == 0) invalid(std::string(family_name(s.family)) + ": n must be positive");
      break;
    case MatrixFamily::RandomPdPart:
      if (s.n == 0) invalid("random_pd_part: n must be positive");
      if (!(s.spread >= 0.0) || !std::isfinite(s.shift)) invalid("random_pd_part: invalid shift or spread");
      break;
    case MatrixFamily::Diagonal:
    case MatrixFamily::Bidiagonal:
      if (s.values.empty()) invalid(std::string(family_name(s.family)) + ": empty diagonal");
      break;
    case MatrixFamily::File:
      if (s.path.empty()) invalid("file: empty path");
      break;
  }
}

}  // namespace

const char* family_name(MatrixFamily f) noexcept {
  switch (f) {
    case MatrixFamily::Identity: return "identity";
    case MatrixFamily::Diagonal: return "diagonal";
    case MatrixFamily::Jordan: return "jordan";
    case MatrixFamily::Bidiagonal: return "bidiagonal";
    case MatrixFamily::RandomPdPart: return "random_pd_part";
    case MatrixFamily::NormalRandom: return "normal_random";
    case MatrixFamily::File: return "file";
  }
  return "unknown";
}

MatrixSpec parse_matrix_spec(std::string_view text) {
  MatrixSpec s;
  const auto colon = text.find(':');
  const std::string_view head = colon == std::string_view::npos ? text : text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool known = colon != std::string_view::npos && head != "file" &&
                     (head == "identity" || head == "diagonal" || head == "jordan" || head == "bidiagonal" ||
                      head == "random_pd_part" || head == "normal_random");
  if (!known) {
    s.family = MatrixFamily::File;
    s.path = std::string(head == "file" ? body : text);
    validate(s);
    return s;
  }
  s.family = family_from_name(head);
  switch (s.family) {
    case MatrixFamily::Identity:
      s.n = to_uint(body);
      break;
    case MatrixFamily::Diagonal:
      s.values = real_list(body);
      s.n = s.values.size();
      break;
    case MatrixFamily::Jordan: {
      const auto p = split(body, ',');
      if (p.size() != 2) invalid("jordan: expected LAMBDA,N");
      s.lambda = to_double(p[0]);
      s.n = to_uint(p[1]);
      break;
    }
    case MatrixFamily::Bidiagonal: {
      const auto p = split(body, ';');
      if (p.size() != 2) invalid("bidiagonal: expected d1,d2,..;S");
      s.values = real_list(p[0]);
      s.superdiag = to_double(p[1]);
      s.n = s.values.size();
      break;
    }
    case MatrixFamily::RandomPdPart: {
      const auto p = split(body, ',');
      if (p.size() != 4) invalid("random_pd_part: expected N,SHIFT,SPREAD,SEED");
      s.n = to_uint(p[0]);
      s.shift = to_double(p[1]);
      s.spread = to_double(p[2]);
      s.seed = to_uint(p[3]);
      break;
    }
    case MatrixFamily::NormalRandom: {
      const auto p = split(body, ',');
      if (p.size() != 2) invalid("normal_random: expected N,SEED");
      s.n = to_uint(p[0]);
      s.seed = to_uint(p[1]);
      break;
    }
    case MatrixFamily::File:
      break;
  }
  validate(s);
  return s;
}

MatrixSpec matrix_spec_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_matrix_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    invalid("matrix spec must be a string or an object with a 'family' field");
  MatrixSpec s;
  s.family = family_from_name(j["family"].get<std::string>());
  try {
    if (j.contains("n")) s.n = j["n"].get<std::size_t>();
    if (j.contains("values"))
      for (const auto& v : j["values"]) s.values.push_back(complex_from_json(v));
    if (j.contains("lambda")) s.lambda = complex_from_json(j["lambda"]);
    if (j.contains("superdiag")) s.superdiag = complex_from_json(j["superdiag"]);
    if (j.contains("shift")) s.shift = j["shift"].get<double>();
    if (j.contains("spread")) s.spread = j["spread"].get<double>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("path")) s.path = j["path"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("matrix spec: ") + e.what());
  }
  if (s.family == MatrixFamily::Diagonal || s.family == MatrixFamily::Bidiagonal) {
    if (s.n != 0 && s.n != s.values.size()) invalid("matrix spec: n disagrees with the diagonal length");
    s.n = s.values.size();
  }
  validate(s);
  return s;
}

std::string matrix_spec_json(const MatrixSpec& s) {
  std::string out = "{\"family\": \"" + std::string(family_name(s.family)) + "\"";
  auto list = [](const std::vector<cplx>& v) {
    std::string r = "[";
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ", " : "") + json_complex(v[i]);
    return r + "]";
  };
  switch (s.family) {
    case MatrixFamily::Identity:
      out += ", \"n\": " + std::to_string(s.n);
      break;
    case MatrixFamily::Diagonal:
      out += ", \"n\": " + std::to_string(s.n) + ", \"values\": " + list(s.values);
      break;
    case MatrixFamily::Jordan:
      out += ", \"n\": " + std::to_string(s.n) + ", \"lambda\": " + json_complex(s.lambda);
      break;
    case MatrixFamily::Bidiagonal:
      out += ", \"n\": " + std::to_string(s.n) + ", \"values\": " + list(s.values) +
             ", \"superdiag\": " + json_complex(s.superdiag);
      break;
    case MatrixFamily::RandomPdPart:
      out += ", \"n\": " + std::to_string(s.n) + ", \"shift\": " + json_real(s.shift) +
             ", \"spread\": " + json_real(s.spread) + ", \"seed\": " + std::to_string(s.seed);
      break;
    case MatrixFamily::NormalRandom:
      out += ", \"n\": " + std::to_string(s.n) + ", \"seed\": " + std::to_string(s.seed);
      break;
    case MatrixFamily::File: {
      out += ", \"n\": " + std::to_string(s.n) + ", \"path\": " + nlohmann::json(s.path).dump();
      break;
    }
  }
  return out + "}";
}

Matrix generate_matrix(const MatrixSpec& s) {
  validate(s);
  switch (s.family) {
    case MatrixFamily::Identity:
      return Matrix::identity(s.n);
    case MatrixFamily::Diagonal:
      return Matrix::diagonal(s.values);
    case MatrixFamily::Jordan: {
      Matrix a(s.n);
      for (std::size_t i = 0; i < s.n; ++i) {
        a(i, i) = s.lambda;
        if (i + 1 < s.n) a(i, i + 1) = 1.0;
      }
      return a;
    }
    case MatrixFamily::Bidiagonal: {
      Matrix a = Matrix::diagonal(s.values);
      for (std::size_t i = 0; i + 1 < s.values.size(); ++i) a(i, i + 1) = s.superdiag;
      return a;
    }
    case MatrixFamily::RandomPdPart: {
      // G has N(0, 1/2) real and imaginary parts scaled by 1/sqrt(n), so ||G|| stays O(1).
      Rng rng = make_rng(s.seed, 0);
      const double scale = s.spread / std::sqrt(static_cast<double>(s.n));
      for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        Matrix a = random_matrix(rng, s.n, scale);
        for (std::size_t i = 0; i < s.n; ++i) a(i, i) += s.shift;
        const auto m = eig_hermitian(hermitian_part(a));
        const double m_norm = std::max(std::abs(m.values.front()), std::abs(m.values.back()));
        if (m.values.front() > default_tolerances().positive_definite * m_norm) return a;
      }
      invalid("random_pd_part: no positive definite Hermitian part after resampling; increase shift");
    }
    case MatrixFamily::NormalRandom: {
      // Q D Q^H with eigenvalues uniform in the disk |z - 2| <= 1.
      Rng rng = make_rng(s.seed, 0);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<cplx> d(s.n);
      for (auto& z : d) z = 2.0 + std::polar(std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
      const Matrix q = random_unitary(rng, s.n);
      return q * Matrix::diagonal(d) * q.adjoint();
    }
    case MatrixFamily::File: {
      Matrix a = read_matrix_market(s.path);
      if (!a.is_square()) invalid("file: matrix '" + s.path + "' is not square");
      if (s.n != 0 && a.rows() != s.n) invalid("file: matrix dimension disagrees with n");
      return a;
    }
  }
  invalid("unknown family");
}

}  // namespace gmreslab
