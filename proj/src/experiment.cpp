#include "gmreslab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "format.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/random.hpp"
#include "gmreslab/report_io.hpp"
#include "spec_json.hpp"

namespace gmreslab {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw LabError(ErrorCode::InvalidSpec, what); }

std::size_t to_size(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::size_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) invalid("bad depth '" + std::string(s) + "'");
  return x;
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("config field '") + key + "': " + e.what());
  }
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
      invalid(std::string("unknown key '") + it.key() + "' in " + where);
}

SolverOptions solver_from_json(const nlohmann::json& j, SolverOptions o) {
  if (!j.is_object()) invalid("'solver' must be an object");
  check_keys(j,
             {"starts", "max_iters", "worst_case_starts", "fd_step", "max_halvings", "ascent_step", "armijo",
              "curvature", "lower_bound_probes", "seed", "tolerance", "polish_rounds"},
             "solver");
  if (j.contains("starts")) o.starts = get<int>(j, "starts");
  if (j.contains("max_iters")) o.max_iters = get<int>(j, "max_iters");
  if (j.contains("worst_case_starts")) o.worst_case_starts = get<int>(j, "worst_case_starts");
  if (j.contains("fd_step")) o.fd_step = get<double>(j, "fd_step");
  if (j.contains("max_halvings")) o.max_halvings = get<int>(j, "max_halvings");
  if (j.contains("ascent_step")) o.ascent_step = get<double>(j, "ascent_step");
  if (j.contains("armijo")) o.armijo = get<double>(j, "armijo");
  if (j.contains("curvature")) o.curvature = get<double>(j, "curvature");
  if (j.contains("lower_bound_probes")) o.lower_bound_probes = get<int>(j, "lower_bound_probes");
  if (j.contains("seed")) o.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("tolerance")) o.tolerance = get<double>(j, "tolerance");
  if (j.contains("polish_rounds")) o.polish_rounds = get<int>(j, "polish_rounds");
  if (o.starts < 1 || o.max_iters < 1 || o.worst_case_starts < 0 || o.max_halvings < 1 || o.lower_bound_probes < 0 ||
      o.polish_rounds < 0)
    invalid("solver: counts must be positive");
  if (!(o.fd_step > 0.0) || !(o.ascent_step > 0.0) || !(o.tolerance > 0.0) || !(o.armijo > 0.0) ||
      !(o.curvature > o.armijo && o.curvature < 1.0))
    invalid("solver: step sizes and tolerances must be positive, with armijo < curvature < 1");
  return o;
}

ChainSlacks slacks_from_json(const nlohmann::json& j) {
  if (!j.is_object()) invalid("'slacks' must be an object");
  check_keys(j, {"gmres_vs_worst", "worst_vs_ideal", "ideal_vs_starke", "ideal_vs_elman", "starke_vs_elman"},
             "slacks");
  ChainSlacks s;
  if (j.contains("gmres_vs_worst")) s.gmres_vs_worst = get<double>(j, "gmres_vs_worst");
  if (j.contains("worst_vs_ideal")) s.worst_vs_ideal = get<double>(j, "worst_vs_ideal");
  if (j.contains("ideal_vs_starke")) s.ideal_vs_starke = get<double>(j, "ideal_vs_starke");
  if (j.contains("ideal_vs_elman")) s.ideal_vs_elman = get<double>(j, "ideal_vs_elman");
  if (j.contains("starke_vs_elman")) s.starke_vs_elman = get<double>(j, "starke_vs_elman");
  for (double v : {s.gmres_vs_worst, s.worst_vs_ideal, s.ideal_vs_starke, s.ideal_vs_elman, s.starke_vs_elman})
    if (!std::isfinite(v)) invalid("slacks must be finite");
  return s;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw LabError(ErrorCode::FileError, "cannot write '" + p.string() + "'");
  out << text;
  out.close();
  if (!out) throw LabError(ErrorCode::FileError, "write failed for '" + p.string() + "'");
}

std::string summary_line(const BoundsReport& r) {
  std::string s = "k=" + std::to_string(r.k) + " gmres_max=" + json_real(r.gmres_max) +
                  " worst_case=" + json_real(r.worst_case) + " ideal=" + json_real(r.ideal) +
                  " starke=" + json_real(r.starke_rhs) +
                  " elman=" + (r.elman_rhs ? json_real(*r.elman_rhs) : std::string("n/a"));
  std::string failed;
  for (const auto& v : r.verdicts)
    if (!v.passed) failed += (failed.empty() ? "" : ",") + v.name;
  s += failed.empty() ? " PASS" : " FAIL(" + failed + ")";
  if (!r.ideal_certified) s += " uncertified";
  return s + "\n";
}

}  // namespace

std::vector<std::size_t> parse_depths(std::string_view text) {
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::size_t a = to_size(text.substr(0, dots)), b = to_size(text.substr(dots + 2));
    if (a > b) invalid("empty depth range");
    for (std::size_t k = a; k <= b; ++k) out.push_back(k);
  } else {
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      out.push_back(to_size(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("config must be a JSON object");
  check_keys(j, {"matrix", "depths", "trials", "seed", "solver", "slacks", "out_dir", "plot", "strict", "threads"},
             "config");
  if (!j.contains("matrix")) invalid("config needs a 'matrix' field");

  ExperimentConfig cfg;
  cfg.matrix = matrix_spec_from_json(j["matrix"]);
  if (cfg.matrix.family == MatrixFamily::File && std::filesystem::path(cfg.matrix.path).is_relative() &&
      !base_dir.empty())
    cfg.matrix.path = (base_dir / cfg.matrix.path).lexically_normal().string();

  if (j.contains("depths")) {
    const auto& d = j["depths"];
    if (d.is_string())
      cfg.depths = parse_depths(d.get<std::string>());
    else
      cfg.depths = get<std::vector<std::size_t>>(j, "depths");
  }
  if (j.contains("trials")) cfg.trials = get<std::size_t>(j, "trials");
  if (j.contains("solver")) cfg.solver = solver_from_json(j["solver"], cfg.solver);
  if (j.contains("seed")) cfg.solver.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("slacks")) cfg.slacks = slacks_from_json(j["slacks"]);
  if (j.contains("out_dir")) cfg.out_dir = get<std::string>(j, "out_dir");
  if (j.contains("plot")) cfg.plot = get<bool>(j, "plot");
  if (j.contains("strict")) cfg.strict = get<bool>(j, "strict");
  if (j.contains("threads")) cfg.threads = get<unsigned>(j, "threads");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LabError(ErrorCode::FileError, "cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path());
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o) {
  if (o.matrix) cfg.matrix = parse_matrix_spec(*o.matrix);
  if (o.depths) cfg.depths = parse_depths(*o.depths);
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.solver.seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.strict) cfg.strict = *o.strict;
  if (o.threads) cfg.threads = *o.threads;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAB_THREADS")) {
    unsigned cap = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return static_cast<unsigned>(std::clamp<std::size_t>(tasks, 1, n));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.matrix = cfg.matrix;
  const Matrix a = generate_matrix(cfg.matrix);
  res.matrix.n = a.rows();
  if (!a.all_finite()) invalid("matrix has non-finite entries");

  std::vector<std::size_t> depths = cfg.depths;
  if (depths.empty()) invalid("no depths requested");
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  if (depths.front() < 1 || depths.back() > a.rows())
    invalid("depths must lie in [1, " + std::to_string(a.rows()) + "]");

  const BoundIngredients ingredients = bound_ingredients(a);

  // Each depth is an independent task seeded from (seed, k); results land
  // in their own slot, so the output does not depend on scheduling.
  res.reports.resize(depths.size());
  std::vector<std::exception_ptr> errors(depths.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < depths.size();) {
      try {
        SolverOptions opts = cfg.solver;
        opts.seed = split_seed(cfg.solver.seed, depths[i]);
        res.reports[i] = verify_chain(a, ingredients, depths[i], cfg.trials, opts, cfg.slacks);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = worker_count(cfg.threads, depths.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool failed = false, uncertified = false;
  for (const auto& r : res.reports) {
    failed = failed || !r.all_passed();
    uncertified = uncertified || !r.ideal_certified;
    res.summary += summary_line(r);
  }
  res.exit_code = failed ? kExitInequality : (uncertified && cfg.strict) ? kExitUncertified : kExitOk;

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw LabError(ErrorCode::FileError, "cannot create '" + cfg.out_dir.string() + "': " + ec.message());
  write_file(cfg.out_dir / "report.json", experiment_report_json(res.matrix, res.reports));
  write_file(cfg.out_dir / "curves.csv", curves_csv(res.reports));
  if (cfg.plot) write_file(cfg.out_dir / "plot.svg", curves_svg(res.reports));
  return res;
}

}  // namespace gmreslab
