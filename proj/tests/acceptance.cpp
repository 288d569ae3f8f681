// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gmreslab/bounds.hpp"
#include "gmreslab/dense.hpp"
#include "gmreslab/fov.hpp"
#include "gmreslab/generate.hpp"
#include "gmreslab/krylov.hpp"
#include "gmreslab/minimax.hpp"
#include "gmreslab/random.hpp"
#include "oracles.hpp"

using namespace gmreslab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Suite shared by the field-of-values bound and the relaxation chain.
struct SuiteCase {
  Matrix a;
  BoundIngredients in;
  std::vector<MinimaxResult> ideal;  // index k-1
};

std::vector<SuiteCase> build_general_suite() {
  constexpr double shifts[] = {0.0, 0.5, 1.0, 1.5, 2.5};
  std::vector<SuiteCase> out;
  for (std::uint64_t i = 0; out.size() < 200; ++i) {
    const std::size_t n = 2 + i % 9;
    Matrix a = suite::shifted_gaussian(1001, i, n, shifts[i % 5]);
    if (std::abs(oracle::to_eigen(a).determinant()) < 1e-6) continue;
    SuiteCase c;
    c.in = bound_ingredients(a);
    c.a = std::move(a);
    out.push_back(std::move(c));
  }
  return out;
}

Outcome general_suite_bound(std::vector<SuiteCase>& suite) {
  Outcome o;
  double worst = std::numeric_limits<double>::infinity();
  int cases = 0, certified = 0;
  SolverOptions opts;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    auto& c = suite[i];
    opts.seed = 7000 + i;
    for (std::size_t k = 1; k <= 3; ++k) {
      if (k > c.a.rows()) break;
      c.ideal.push_back(ideal_gmres(c.a, k, opts));
      const auto& r = c.ideal.back();
      const double margin = starke_bound(c.in, k) + 1e-8 - r.upper_bound;
      worst = std::min(worst, margin);
      ++cases;
      certified += r.certified;
      if (margin < 0) o.pass = false;
    }
  }
  o.detail = fmt("%d cases, %d certified, smallest margin %.3g", cases, certified, worst);
  return o;
}

Outcome relaxation_chain(const std::vector<SuiteCase>& suite) {
  Outcome o;
  double worst = std::numeric_limits<double>::infinity();
  int cases = 0;
  for (const auto& c : suite) {
    const double one = one_step_ideal(c.a).value;
    for (std::size_t k = 1; k <= c.ideal.size(); ++k) {
      const double margin = std::pow(one, static_cast<double>(k)) + 1e-6 - c.ideal[k - 1].upper_bound;
      worst = std::min(worst, margin);
      ++cases;
      if (margin < 0) o.pass = false;
    }
  }
  o.detail = fmt("%d cases, smallest margin %.3g", cases, worst);
  return o;
}

Outcome positive_definite_suite(Outcome& ordering) {
  Outcome o;
  double worst = std::numeric_limits<double>::infinity(), worst_order = worst;
  int cases = 0, certified = 0;
  SolverOptions opts;
  for (std::uint64_t i = 0; i < 100; ++i) {
    MatrixSpec spec;
    spec.family = MatrixFamily::RandomPdPart;
    spec.n = 2 + i % 9;
    spec.shift = 1.2 + 0.3 * static_cast<double>(i % 6);
    spec.spread = 1.0;
    spec.seed = 2000 + i;
    const Matrix a = generate_matrix(spec);
    const auto in = bound_ingredients(a);
    opts.seed = 8000 + i;
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, spec.n); ++k) {
      const auto elman = elman_bound(in, k);
      if (!elman) {
        o.pass = ordering.pass = false;
        continue;
      }
      const auto r = ideal_gmres(a, k, opts);
      const double margin = *elman + 1e-8 - r.upper_bound;
      const double order = *elman + 1e-8 - starke_bound(in, k);
      worst = std::min(worst, margin);
      worst_order = std::min(worst_order, order);
      ++cases;
      certified += r.certified;
      if (margin < 0) o.pass = false;
      if (order < 0) ordering.pass = false;
    }
  }
  o.detail = fmt("%d cases, %d certified, smallest margin %.3g", cases, certified, worst);
  ordering.detail = fmt("%d cases, smallest margin %.3g", cases, worst_order);
  return o;
}

Outcome chain_inequality() {
  Outcome o;
  double worst_a = std::numeric_limits<double>::infinity(), worst_b = worst_a;
  int cases = 0;
  SolverOptions opts;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 3 + i % 6;
    const Matrix a = suite::shifted_gaussian(3003, i, n, 0.5 * static_cast<double>(i % 5));
    const auto in = bound_ingredients(a);
    opts.seed = 9000 + i;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto rep = verify_chain(a, in, k, 20, opts);
      const double ma = rep.worst_case + 1e-6 - rep.gmres_max;
      const double mb = rep.ideal + 1e-6 - rep.worst_case;
      worst_a = std::min(worst_a, ma);
      worst_b = std::min(worst_b, mb);
      cases += 20;
      if (ma < 0 || mb < 0) o.pass = false;
    }
  }
  o.detail = fmt("%d residual samples, smallest margins %.3g (gmres vs worst) %.3g (worst vs ideal)", cases, worst_a,
                 worst_b);
  return o;
}

Outcome first_step_equality() {
  Outcome o;
  double worst = 0.0;
  SolverOptions opts;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 7;
    const Matrix a = suite::shifted_gaussian(4004, i, n, 0.5 * static_cast<double>(i % 4));
    opts.seed = 10000 + i;
    const double ideal = ideal_gmres(a, 1, opts).upper_bound;
    const double wc = worst_case_gmres(a, 1, opts).value;
    const double one = one_step_ideal(a, opts).value;
    const double d = std::max({std::abs(ideal - wc), std::abs(ideal - one), std::abs(wc - one)});
    worst = std::max(worst, d);
    if (d > 1e-5) o.pass = false;
  }
  o.detail = fmt("100 matrices, largest discrepancy %.3g", worst);
  return o;
}

Outcome closed_form_alpha() {
  Outcome o;
  double worst_gain = -std::numeric_limits<double>::infinity(), worst_rel = 0.0;
  auto rng = make_rng(5005, 0);
  std::uniform_real_distribution<double> expo(-6.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 7;
    const Matrix a = suite::shifted_gaussian(5005, 1 + t, n, 0.5 * (t % 4));
    const CVector v = random_vector(rng, n);
    const CVector av = a * v;
    const cplx alpha = optimal_alpha(a, v).alpha_star;
    auto resid = [&](cplx al) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::norm(v[i] - al * av[i]);
      return std::sqrt(s);
    };
    const double at_star = resid(alpha);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 10000; ++s) {
      const double scale = std::pow(10.0, expo(rng)) * std::max(1.0, std::abs(alpha));
      best = std::min(best, resid(alpha + scale * complex_gaussian(rng)));
    }
    worst_gain = std::max(worst_gain, at_star - best);
    if (at_star > best + 1e-10) o.pass = false;

    // <v, Av>/<Av, Av> against <A^{-1} w, w>/<w, w> at w = Av
    const cplx lhs = inner(v, av) / inner(av, av);
    const oracle::CVec w = oracle::to_eigen(av);
    const oracle::CVec ainv_w = oracle::to_eigen(a).partialPivLu().solve(w);
    const cplx rhs = w.dot(ainv_w) / w.squaredNorm();
    const double rel = std::abs(lhs - rhs) / std::abs(lhs);
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-10) o.pass = false;
  }
  o.detail = fmt("1000 pairs, largest sampled gain %.3g, largest identity error %.3g", worst_gain, worst_rel);
  return o;
}

Outcome distance_oracle() {
  Outcome o;
  double worst_hull = 0.0, worst_real = 0.0;
  int real_cases = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 7;
    const Matrix a = suite::shifted_gaussian(6006, i, n, 0.4 * static_cast<double>(i % 5));
    const double d = std::abs(nu_fov(a).nu - oracle::hull_distance(oracle::to_eigen(a), 2000));
    worst_hull = std::max(worst_hull, d);
    if (d > 1e-5) o.pass = false;
  }
  auto rng = make_rng(6007, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::uint64_t i = 0; real_cases < 100; ++i) {
    const std::size_t n = 2 + i % 7;
    Matrix a(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = gauss(rng) / std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < n; ++r) a(r, r) += 1.0;
    const double lmin = oracle::hermitian_eigenvalues(oracle::to_eigen(hermitian_part(a)))(0);
    if (lmin <= 1e-3) continue;
    ++real_cases;
    const double d = std::abs(nu_fov(a).nu - lmin);
    worst_real = std::max(worst_real, d);
    if (d > 1e-7) o.pass = false;
  }
  o.detail = fmt("100 hull comparisons (largest error %.3g), %d real positive definite (largest error %.3g)",
                 worst_hull, real_cases, worst_real);
  return o;
}

Outcome normal_oracle() {
  Outcome o;
  double worst = 0.0;
  SolverOptions opts;
  auto rng = make_rng(7007, 0);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 2 + i % 7;
    std::vector<cplx> eig(n);
    for (auto& z : eig) z = (i % 3 == 0 ? cplx(std::abs(complex_gaussian(rng).real()) + 0.2) : complex_gaussian(rng)) +
                             cplx(1.0 + 0.5 * static_cast<double>(i % 3));
    const Matrix a = Matrix::diagonal(eig);
    opts.seed = 11000 + i;
    for (std::size_t k = 1; k <= std::min<std::size_t>(2, n); ++k) {
      const double d = std::abs(ideal_gmres(a, k, opts).upper_bound - scalar_minimax_oracle(eig, k));
      worst = std::max(worst, d);
      if (d > 1e-4) o.pass = false;
    }
  }
  const double v12 = ideal_gmres(Matrix::diagonal(std::vector<cplx>{1, 2}), 1).upper_bound;
  const double v123 = ideal_gmres(Matrix::diagonal(std::vector<cplx>{1, 2, 3}), 2).upper_bound;
  const double e12 = std::abs(v12 - 1.0 / 3.0), e123 = std::abs(v123 - 1.0 / 7.0);
  if (e12 > 1e-6 || e123 > 1e-6) o.pass = false;
  o.detail = fmt("30 diagonal matrices (largest error %.3g); diag(1,2) k=1 error %.3g; diag(1,2,3) k=2 error %.3g",
                 worst, e12, e123);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome thread_determinism() {
  Outcome o;
  const fs::path work = ACCEPTANCE_WORKDIR;
  fs::remove_all(work);
  fs::create_directories(work);
  {
    std::ofstream cfg(work / "config.json");
    cfg << R"({"matrix": "random_pd_part:7,1.2,1,5", "depths": "1..4", "trials": 12, "seed": 99, "threads": 4})";
  }
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3"}) {
    const fs::path out = work / (std::string("threads_") + threads);
    const std::string cmd = std::string("LAB_THREADS=") + threads + " \"" + LAB_EXECUTABLE + "\" run \"" +
                            (work / "config.json").string() + "\" --out-dir \"" + out.string() + "\" > \"" +
                            (work / "log.txt").string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      o.pass = false;
      o.detail = fmt("lab run exited with status %d", rc);
      return o;
    }
    outputs.push_back(slurp(out / "report.json") + '\0' + slurp(out / "curves.csv") + '\0' + slurp(out / "plot.svg"));
  }
  o.pass = !outputs[0].empty() && outputs[0] == outputs[1];
  o.detail = o.pass ? "report.json, curves.csv and plot.svg byte-identical" : "outputs differ";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* what, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s: %s (%s; %.1fs)\n", id, what, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  };

  std::vector<SuiteCase> general = build_general_suite();
  Outcome ordering;
  Outcome pd;
  report(1, "ideal below the field-of-values bound", [&] { return general_suite_bound(general); });
  report(2, "ideal below the Hermitian-part bound", [&] { return pd = positive_definite_suite(ordering); });
  report(3, "field-of-values bound below the Hermitian-part bound", [&] { return ordering; });
  report(4, "gmres <= worst case <= ideal", chain_inequality);
  report(5, "first-step equality", first_step_equality);
  report(6, "closed-form one-step coefficient", closed_form_alpha);
  report(7, "distance oracle", distance_oracle);
  report(8, "normal-matrix scalar oracle", normal_oracle);
  report(9, "ideal below powers of the one-step value", [&] { return relaxation_chain(general); });
  report(10, "thread-count determinism", thread_determinism);
  return failures == 0 ? 0 : 1;
}
