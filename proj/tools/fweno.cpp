#include <cmath>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "fweno/experiments.hpp"

namespace {

using namespace fweno;

void print_convergence(const std::vector<ConvergenceResult>& results) {
  for (const auto& res : results) {
    std::printf("%s %s r=%d -> %s\n", experiment_name(res.experiment).c_str(),
                variant_name(res.variant).c_str(), res.r, res.csv_path.c_str());
    std::printf("  %8s %12s %6s %12s %6s\n", "N", "L1", "ord", "Linf", "ord");
    for (const auto& row : res.rows) {
      if (std::isnan(row.l1_order))
        std::printf("  %8d %12.4e %6s %12.4e %6s\n", row.n, row.l1, "-", row.linf, "-");
      else
        std::printf("  %8d %12.4e %6.2f %12.4e %6.2f\n", row.n, row.l1, row.l1_order,
                    row.linf, row.linf_order);
    }
    if (!res.order_ok)
      std::printf("  ** finest-pair order fell below %.1f **\n", 2.0 * res.r - 1.5);
  }
}

int run(const std::string& command, const std::string& config_path, const RunOptions& opt) {
  const ExperimentSpec spec = load_config(config_path);
  if (command == "convergence") {
    const auto results = cmd_convergence(spec, opt);
    print_convergence(results);
    for (const auto& res : results)
      if (!res.order_ok) return 2;
    return 0;
  }
  if (command == "shock") {
    for (const auto& res : cmd_shock(spec, opt))
      std::printf("%s %s r=%d N=%d  L1_vs_ref=%.4e  range=[%.6g, %.6g]  kernel=%.3fs\n",
                  experiment_name(res.experiment).c_str(),
                  variant_name(res.variant).c_str(), res.r, res.n, res.l1_vs_ref,
                  res.field_min, res.field_max, res.kernel_seconds);
    return 0;
  }
  if (command == "run2d") {
    for (const auto& res : cmd_2d(spec, opt))
      std::printf("%s %s r=%d %dx%d  rho_min=%.6g p_min=%.6g  kernel=%.3fs  %s\n",
                  experiment_name(res.experiment).c_str(),
                  variant_name(res.variant).c_str(), res.r, res.nx, res.ny, res.rho_min,
                  res.p_min, res.kernel_seconds, res.pgm_path.c_str());
    return 0;
  }
  // bench
  const BenchReport rep = cmd_bench(spec, opt);
  std::printf("op accounting: %zu cases, %s (%s)\n", rep.op_rows.size(),
              rep.ops_ok ? "all exact" : "MISMATCH", rep.ops_csv.c_str());
  std::printf("indicators r=%d over %llu windows: js=%.3e yc=%.3e fweno=%.3e s/window; "
              "fweno is %.2fx vs js, %.2fx vs yc\n",
              rep.timing.r, static_cast<unsigned long long>(rep.timing.windows),
              rep.timing.js_seconds, rep.timing.yc_seconds, rep.timing.fweno_seconds,
              rep.timing.speedup_vs_js, rep.timing.speedup_vs_yc);
  std::printf("efficiency rows: %zu -> %s (plot: %s)\n", rep.efficiency.size(),
              rep.efficiency_csv.c_str(), rep.plot_script.c_str());
  return rep.ops_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-difference WENO experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions opt;
  const char* names[] = {"convergence", "shock", "run2d", "bench"};
  const char* blurbs[] = {"grid-refinement studies with exact solutions",
                          "1D shock problems against a fine reference",
                          "2D Euler runs with density and Schlieren output",
                          "kernel op counts, indicator timing, efficiency curves"};
  for (int i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_option("--threads", opt.threads, "solver threads for 2D sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--instrument", opt.instrument, "print per-run operation counts");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(app.get_subcommands().front()->get_name(), config_path, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
