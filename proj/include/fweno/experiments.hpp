#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fweno/solver.hpp"

namespace fweno {

enum class ExperimentId {
  Advection,
  BurgersSmooth,
  BurgersShock,
  ShuOsher,
  Sod,
  DoubleMach,
  Riemann2D,
  BenchKernels,
  Convergence,  // shorthand for advection + burgers-smooth
};

std::string experiment_name(ExperimentId id);
ExperimentId parse_experiment(const std::string& name);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed experiment description. Unset overrides keep the per-experiment
/// defaults (documented in the README); lists always end up non-empty.
struct ExperimentSpec {
  ExperimentId experiment = ExperimentId::Advection;
  std::vector<WenoVariant> variants;
  std::vector<int> orders;
  std::vector<int> grids;
  std::optional<double> cfl, t_final, eps;
  std::optional<int> s1, s2;
  std::optional<SplittingScheme> splitting;
  std::optional<DtRule> dt_rule;
};

/// Key=value text, one pair per line, '#' comments, comma lists. Throws
/// ConfigError naming the offending line; unknown keys are errors.
ExperimentSpec parse_config_text(const std::string& text);
ExperimentSpec load_config(const std::string& path);

struct RunOptions {
  std::string out_dir = ".";
  int threads = 1;
  bool instrument = false;
};

/// Exact profiles for the convergence problems: the sine wave advected with
/// unit speed, and its Burgers evolution found by Newton iteration on the
/// characteristic foot point (valid before the wave breaks at t = 2/pi).
double advection_exact(double x, double t);
double burgers_exact(double x, double t);

struct ConvergenceRow {
  int n = 0;
  double l1 = 0.0, l1_order = 0.0;  // orders are NaN on the first row
  double linf = 0.0, linf_order = 0.0;
};

struct ConvergenceResult {
  ExperimentId experiment;
  WenoVariant variant;
  int r = 0;
  std::vector<ConvergenceRow> rows;
  std::string csv_path;
  bool order_ok = false;  // finest-pair orders reach 2r-1 - 0.5 in both norms
};

struct ShockResult {
  ExperimentId experiment;
  WenoVariant variant;
  int r = 0, n = 0;
  double l1_vs_ref = 0.0;  // density for Euler laws, the scalar otherwise
  double field_min = 0.0, field_max = 0.0;
  double kernel_seconds = 0.0, total_seconds = 0.0;
  std::string dat_path;
};

struct Field2DResult {
  ExperimentId experiment;
  WenoVariant variant;
  int r = 0, nx = 0, ny = 0;
  std::vector<double> rho;  // interior density, x fastest
  double rho_min = 0.0, p_min = 0.0;
  double kernel_seconds = 0.0, total_seconds = 0.0;
  std::string dat_path, pgm_path;
};

struct BenchOpRow {
  WenoVariant variant;
  int r = 0, s2 = 0;
  std::uint64_t counted_total = 0, model_total = 0;
  std::uint64_t counted_divs = 0, model_divs = 0;
  bool match = false;
};

struct BenchTiming {
  int r = 0;
  std::uint64_t windows = 0;
  double js_seconds = 0.0, yc_seconds = 0.0, fweno_seconds = 0.0;
  double speedup_vs_js = 0.0, speedup_vs_yc = 0.0;
};

struct EfficiencyRow {
  WenoVariant variant;
  int r = 0, n = 0;
  double l1 = 0.0, kernel_seconds = 0.0, total_seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchOpRow> op_rows;
  bool ops_ok = false;
  BenchTiming timing;
  std::vector<EfficiencyRow> efficiency;
  std::string ops_csv, timing_csv, efficiency_csv, plot_script;
};

/// The four CLI commands. Each validates that the experiment id belongs to
/// the command, runs every (variant, r) combination, writes its artifacts
/// under options.out_dir and returns the structured results.
std::vector<ConvergenceResult> cmd_convergence(const ExperimentSpec& spec,
                                               const RunOptions& options);
std::vector<ShockResult> cmd_shock(const ExperimentSpec& spec, const RunOptions& options);
std::vector<Field2DResult> cmd_2d(const ExperimentSpec& spec, const RunOptions& options);
BenchReport cmd_bench(const ExperimentSpec& spec, const RunOptions& options);

}  // namespace fweno
