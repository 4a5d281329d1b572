#include "ncpflow/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncpflow/timestep.hpp"
#include "ncpflow/vtk.hpp"

namespace ncpflow {

int RunLedger::successful_steps() const {
  int n = 0;
  for (const auto& a : attempts) n += a.success ? 1 : 0;
  return n;
}

int RunLedger::failed_steps() const { return static_cast<int>(attempts.size()) - successful_steps(); }

int RunLedger::successful_iterations() const {
  int n = 0;
  for (const auto& a : attempts)
    if (a.success) n += a.report.iterations;
  return n;
}

int RunLedger::failed_iterations() const {
  int n = 0;
  for (const auto& a : attempts)
    if (!a.success) n += a.report.iterations;
  return n;
}

long RunLedger::total_linear_iterations() const {
  long n = 0;
  for (const auto& a : attempts)
    for (int li : a.report.linear_iterations) n += li;
  return n;
}

std::string RunLedger::summary() const {
  std::ostringstream ss;
  ss << "TS " << successful_steps() << " (" << failed_steps() << ")  NS "
     << successful_iterations() << " (" << failed_iterations() << ")";
  return ss.str();
}

void RunLedger::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "time,dt,success,nonlinear_iterations,linear_iterations,final_residual\n";
  out.precision(15);
  for (const auto& a : attempts) {
    long lin = 0;
    for (int li : a.report.linear_iterations) lin += li;
    out << a.time << ',' << a.dt << ',' << (a.success ? 1 : 0) << ',' << a.report.iterations
        << ',' << lin << ',' << a.report.residual_history.back() << '\n';
  }
}

SimulationResult run_simulation(const SimulationConfig& config) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();

  const CartesianMesh mesh = build_mesh(config.dims, config.cell_size, config.origin);
  const RockField rock = build_rock(config, mesh);
  const auto bcs = build_boundary_conditions(config, mesh);
  const FlowAssembler assembler(mesh, rock, config.fluid, config.vg, bcs, config.gravity);

  SimulationResult result;
  result.final_state = StateVector::uniform(mesh.num_cells(), config.initial_p_l,
                                            config.initial_s_l, config.initial_rho_lh);

  const bool writing = !config.output.directory.empty();
  if (writing) std::filesystem::create_directories(config.output.directory);
  auto output_path = [&](const std::string& file) {
    return config.output.directory + "/" + file;
  };
  auto flush_ledger = [&]() {
    if (writing) result.ledger.write_csv(output_path(config.output.ledger_name));
  };

  std::vector<double> snap_times = config.output.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  std::size_t next_snap = 0;

  TimeStepController controller(config.time.dt_initial, config.dt_min_effective(),
                                config.dt_max_effective(), config.time.end_time);

  StateVector state = result.final_state;
  double t = 0.0;
  int snapshot_index = 0;
  const double end = config.time.end_time;

  while (t < end) {
    double dt = controller.clipped_dt(t);
    // Land exactly on the next snapshot time.
    while (next_snap < snap_times.size() && snap_times[next_snap] <= t + 1.0e-9 * end)
      ++next_snap;
    if (next_snap < snap_times.size() && t + dt > snap_times[next_snap])
      dt = snap_times[next_snap] - t;

    auto [state_new, report] = solve_step(assembler, state, dt, config.newton, config.gmres);
    result.ledger.attempts.push_back({t, dt, report.converged, report});

    if (!report.converged) {
      if (!controller.advance(false, report.iterations)) {
        result.ledger.abort_reason = "time step underflow below dt_min";
        result.ledger.final_time = t;
        result.final_state = state;
        flush_ledger();
        auto wall_end = std::chrono::steady_clock::now();
        result.ledger.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();
        return result;
      }
      continue;  // retry from the same state
    }

    state = std::move(state_new);
    t += dt;
    controller.advance(true, report.iterations);

    if (next_snap < snap_times.size() && t >= snap_times[next_snap] - 1.0e-9 * end) {
      result.snapshots.emplace_back(snap_times[next_snap], state);
      if (writing && config.output.write_vtk)
        write_vtk_snapshot(output_path("snapshot_" + std::to_string(snapshot_index++) + ".vtk"),
                           mesh, state, config.vg);
      ++next_snap;
    }
  }

  result.ledger.completed = true;
  result.ledger.final_time = t;
  result.final_state = state;
  if (writing && config.output.write_vtk)
    write_vtk_snapshot(output_path("final.vtk"), mesh, state, config.vg);
  flush_ledger();
  const auto wall_end = std::chrono::steady_clock::now();
  result.ledger.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();
  return result;
}

}  // namespace ncpflow
