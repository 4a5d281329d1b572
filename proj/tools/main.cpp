#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "ncpflow/benchmarks.hpp"
#include "ncpflow/simulator.hpp"

namespace {

int report_run(const ncpflow::SimulationConfig& cfg) {
  const ncpflow::SimulationResult result = ncpflow::run_simulation(cfg);
  const auto& ledger = result.ledger;
  std::printf("%-28s %s  lin %ld  wall %.2f s\n", cfg.name.c_str(), ledger.summary().c_str(),
              ledger.total_linear_iterations(), ledger.wall_seconds);
  if (!ledger.completed) {
    std::printf("  aborted at t = %.6e s: %s\n", ledger.final_time, ledger.abort_reason.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase compositional flow solver (NCP formulation)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_outdir;
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  run->add_option("config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", run_outdir, "Override the output directory");

  double pr = 2.0e6;
  int cells = 200;
  std::string method = "fb";
  double end_years = 5.0e5;
  std::string bench_outdir;
  auto* bench = app.add_subcommand("bench", "Run a built-in benchmark");
  bench->require_subcommand(1);

  auto* momas = bench->add_subcommand("momas", "1D gas injection benchmark");
  momas->add_option("--pr", pr, "Entry pressure, Pa (2e6 or 2e3)");
  momas->add_option("--cells", cells, "Mesh cells (200 or 400)");
  momas->add_option("--method", method, "min | fb | sfb | smin");
  momas->add_option("--end-years", end_years, "End time in years");
  momas->add_option("-o,--output", bench_outdir, "Output directory");

  int dim = 2;
  std::string perm_file, poro_file;
  std::uint64_t seed = 2024;
  auto* hetero = bench->add_subcommand("hetero", "Heterogeneous 2D/3D benchmark");
  hetero->add_option("--dim", dim, "2 or 3");
  hetero->add_option("--method", method, "min | fb | sfb | smin");
  hetero->add_option("--perm", perm_file, "Permeability raster, one value per line")
      ->check(CLI::ExistingFile);
  hetero->add_option("--poro", poro_file, "Porosity raster, one value per line")
      ->check(CLI::ExistingFile);
  hetero->add_option("--seed", seed, "Seed for the synthetic rock fields");
  hetero->add_option("-o,--output", bench_outdir, "Output directory");

  auto* sweep = bench->add_subcommand("sweep", "All MoMaS cases with every method");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ncpflow::SimulationConfig cfg = ncpflow::load_config(config_path);
      if (!run_outdir.empty()) cfg.output.directory = run_outdir;
      return report_run(cfg);
    }
    const ncpflow::CFunctionKind kind = ncpflow::parse_method(method);
    if (momas->parsed()) {
      ncpflow::SimulationConfig cfg = ncpflow::benchmark_momas(pr, cells, kind, end_years);
      cfg.output.directory = bench_outdir;
      return report_run(cfg);
    }
    if (hetero->parsed()) {
      ncpflow::SimulationConfig cfg =
          ncpflow::benchmark_heterogeneous(dim, kind, perm_file, poro_file, seed);
      cfg.output.directory = bench_outdir;
      return report_run(cfg);
    }
    if (sweep->parsed()) {
      int rc = 0;
      for (double entry : {2.0e6, 2.0e3})
        for (auto k : {ncpflow::CFunctionKind::Min, ncpflow::CFunctionKind::FischerBurmeister,
                       ncpflow::CFunctionKind::SmoothFischerBurmeister})
          rc |= report_run(ncpflow::benchmark_momas(entry, 200, k));
      return rc;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
