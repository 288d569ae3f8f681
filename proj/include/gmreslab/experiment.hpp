#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmreslab/bounds.hpp"
#include "gmreslab/generate.hpp"

namespace gmreslab {

struct ExperimentConfig {
  MatrixSpec matrix;
  std::vector<std::size_t> depths{1};
  std::size_t trials = 20;
  SolverOptions solver;
  ChainSlacks slacks;
  std::filesystem::path out_dir = ".";
  bool plot = true;
  bool strict = false;
  unsigned threads = 0;  // 0: machine default
};

/// Command-line values that replace config fields when present.
struct ConfigOverrides {
  std::optional<std::string> matrix;  // compact spec or .mtx path
  std::optional<std::string> depths;  // "1..5" or "1,2,4"
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<bool> strict;
  std::optional<unsigned> threads;
};

/// "a..b" or a comma list. Throws InvalidSpec.
std::vector<std::size_t> parse_depths(std::string_view text);

/// Relative file paths in the matrix spec resolve against `base_dir`.
/// Throws InvalidSpec on unknown keys or bad values.
ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

/// Throws FileError, InvalidSpec.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o);

/// Worker count: the requested count (or hardware concurrency when 0),
/// capped by LAB_THREADS and by the number of tasks.
unsigned worker_count(unsigned requested, std::size_t tasks);

enum ExitCode : int { kExitOk = 0, kExitInequality = 1, kExitIo = 2, kExitUncertified = 3 };

struct ExperimentResult {
  MatrixSpec matrix;  // with n filled in
  std::vector<BoundsReport> reports;  // sorted by k
  int exit_code = kExitOk;
  std::string summary;  // one line per depth
};

/// Builds the matrix, runs verify_chain per depth (concurrently, seeded per
/// depth) and writes report.json, curves.csv and optionally plot.svg into
/// out_dir. Exit code 1 takes precedence over 3. Throws LabError on
/// configuration, matrix or I/O failures.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace gmreslab
