// lab: command-line front end over the C API.
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmreslab/gmreslab.h"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;
constexpr int kExitUncertified = 3;

int report_error(const char* what) {
  std::fprintf(stderr, "lab: %s: %s\n", what, gl_last_error());
  return kExitError;
}

struct MatrixHandle {
  gl_matrix* m = nullptr;
  ~MatrixHandle() { gl_matrix_free(m); }
};

std::optional<std::vector<size_t>> parse_depths(const std::string& text) {
  std::vector<size_t> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const size_t a = std::stoul(text.substr(0, dots)), b = std::stoul(text.substr(dots + 2));
      if (a > b) return std::nullopt;
      for (size_t k = a; k <= b; ++k) out.push_back(k);
    } else {
      size_t start = 0;
      while (true) {
        const size_t comma = text.find(',', start);
        out.push_back(std::stoul(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

void print_and_free(char* s) {
  std::fputs(s, stdout);
  gl_string_free(s);
}

int cmd_run(const std::string& config, const gl_overrides& ov) {
  int exit_code = kExitError;
  char* summary = nullptr;
  if (gl_run_experiment(config.c_str(), &ov, &exit_code, &summary) != GL_OK) return report_error("run");
  print_and_free(summary);
  if (exit_code == kExitFailed) std::fprintf(stderr, "lab: an inequality failed beyond its slack\n");
  if (exit_code == kExitUncertified) std::fprintf(stderr, "lab: ideal GMRES not certified (strict mode)\n");
  return exit_code;
}

int cmd_bounds(const std::string& matrix, const std::string& depths_text, size_t trials,
               std::optional<unsigned long long> seed) {
  const auto depths = parse_depths(depths_text);
  if (!depths || depths->empty()) {
    std::fprintf(stderr, "lab: bounds: bad --depths '%s'\n", depths_text.c_str());
    return kExitError;
  }
  MatrixHandle a;
  if (gl_matrix_generate(matrix.c_str(), &a.m) != GL_OK) return report_error("bounds");
  gl_solver_options opts;
  gl_solver_options_init(&opts);
  if (seed) opts.seed = *seed;

  bool passed = true;
  std::printf("{\"reports\": [");
  for (size_t i = 0; i < depths->size(); ++i) {
    gl_report* rep = nullptr;
    if (gl_verify_chain(a.m, (*depths)[i], trials, &opts, &rep) != GL_OK) {
      std::printf("]}\n");
      return report_error("bounds");
    }
    passed = passed && gl_report_passed(rep);
    char* json = nullptr;
    gl_report_to_json(rep, &json);
    std::printf(i ? ",\n" : "\n");
    print_and_free(json);
    gl_report_free(rep);
  }
  std::printf("\n]}\n");
  return passed ? 0 : kExitFailed;
}

int cmd_fov(const std::string& matrix, size_t samples) {
  MatrixHandle a;
  if (gl_matrix_generate(matrix.c_str(), &a.m) != GL_OK) return report_error("fov");
  gl_fov* f = nullptr;
  if (gl_fov_boundary(a.m, samples, &f) != GL_OK) return report_error("fov");
  char* csv = nullptr;
  const gl_status st = gl_fov_to_csv(f, &csv);
  gl_fov_free(f);
  if (st != GL_OK) return report_error("fov");
  print_and_free(csv);
  return 0;
}

int cmd_ideal(const std::string& matrix, size_t k, bool strict, std::optional<unsigned long long> seed) {
  MatrixHandle a;
  if (gl_matrix_generate(matrix.c_str(), &a.m) != GL_OK) return report_error("ideal");
  gl_solver_options opts;
  gl_solver_options_init(&opts);
  if (seed) opts.seed = *seed;
  gl_minimax* r = nullptr;
  const gl_status st = gl_ideal_gmres(a.m, k, &opts, &r);
  if (st != GL_OK && st != GL_ERR_BUDGET_EXCEEDED) return report_error("ideal");
  char* json = nullptr;
  gl_minimax_to_json(r, &json);
  print_and_free(json);
  std::printf("\n");
  gl_minimax_free(r);
  if (st == GL_ERR_BUDGET_EXCEEDED) {
    std::fprintf(stderr, "lab: ideal: %s\n", gl_last_error());
    if (strict) return kExitUncertified;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GMRES bound laboratory"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> matrix, depths, out_dir;
  std::optional<long long> trials;
  std::optional<unsigned long long> seed;
  std::optional<int> threads;
  bool strict = false;
  auto* run = app.add_subcommand("run", "run an experiment config and write report.json, curves.csv, plot.svg");
  run->add_option("config", config, "experiment config (JSON)")->required();
  run->add_option("--matrix", matrix, "matrix spec or .mtx path");
  run->add_option("--depths", depths, "depths, e.g. 1..5 or 1,2,4");
  run->add_option("--trials", trials, "random initial residuals per depth")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_flag("--strict", strict, "exit 3 when ideal GMRES is not certified");
  run->add_option("--threads", threads, "worker threads (LAB_THREADS caps this)")->check(CLI::NonNegativeNumber);

  std::string b_matrix, b_depths = "1..5";
  size_t b_trials = 20;
  std::optional<unsigned long long> b_seed;
  auto* bounds = app.add_subcommand("bounds", "verify the bound chain for a matrix and print JSON reports");
  bounds->add_option("--matrix", b_matrix, "matrix spec or .mtx path")->required();
  bounds->add_option("--depths", b_depths, "depths, e.g. 1..5");
  bounds->add_option("--trials", b_trials, "random initial residuals per depth");
  bounds->add_option("--seed", b_seed, "solver seed");

  std::string f_matrix;
  size_t f_samples = 720;
  auto* fov = app.add_subcommand("fov", "print field-of-values boundary samples as CSV");
  fov->add_option("--matrix", f_matrix, "matrix spec or .mtx path")->required();
  fov->add_option("--samples", f_samples, "number of boundary angles (>= 8)");

  std::string i_matrix;
  size_t i_k = 1;
  bool i_strict = false;
  std::optional<unsigned long long> i_seed;
  auto* ideal = app.add_subcommand("ideal", "solve ideal GMRES and print the polynomial as JSON");
  ideal->add_option("--matrix", i_matrix, "matrix spec or .mtx path")->required();
  ideal->add_option("-k", i_k, "polynomial degree (1..8)")->required();
  ideal->add_flag("--strict", i_strict, "exit 3 when not certified");
  ideal->add_option("--seed", i_seed, "solver seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (*run) {
    gl_overrides ov;
    gl_overrides_init(&ov);
    if (matrix) ov.matrix = matrix->c_str();
    if (depths) ov.depths = depths->c_str();
    if (trials) ov.trials = *trials;
    if (seed) ov.has_seed = 1, ov.seed = *seed;
    if (out_dir) ov.out_dir = out_dir->c_str();
    if (strict) ov.strict = 1;
    if (threads) ov.threads = *threads;
    return cmd_run(config, ov);
  }
  if (*bounds) return cmd_bounds(b_matrix, b_depths, b_trials, b_seed);
  if (*fov) return cmd_fov(f_matrix, f_samples);
  return cmd_ideal(i_matrix, i_k, i_strict, i_seed);
}
