#ifndef NCPFLOW_SIMULATOR_HPP
#define NCPFLOW_SIMULATOR_HPP

#include <string>
#include <utility>
#include <vector>

#include "ncpflow/config.hpp"
#include "ncpflow/newton.hpp"

namespace ncpflow {

/// One solve attempt (successful or failed) at a given simulation time.
struct StepRecord {
  double time = 0.0;  ///< time at the start of the attempt, s
  double dt = 0.0;
  bool success = false;
  NewtonReport report;
};

/// Accounting in the TS (time steps) / NS (nonlinear iterations) convention:
/// totals over successful attempts, failed attempts in parentheses.
struct RunLedger {
  std::vector<StepRecord> attempts;
  bool completed = false;
  std::string abort_reason;
  double final_time = 0.0;
  double wall_seconds = 0.0;

  int successful_steps() const;
  int failed_steps() const;
  int successful_iterations() const;
  int failed_iterations() const;
  long total_linear_iterations() const;

  /// "TS 8 (0)  NS 63 (0)" style summary.
  std::string summary() const;
  void write_csv(const std::string& path) const;
};

struct SimulationResult {
  RunLedger ledger;
  StateVector final_state;
  /// States captured at the configured snapshot times (hit exactly).
  std::vector<std::pair<double, StateVector>> snapshots;
};

/// Integrates the configured problem from t = 0 to the end time with the
/// adaptive step controller; failed attempts are retried from the previous
/// state with half the step. Writes the ledger CSV and VTK snapshots when an
/// output directory is configured; the ledger is flushed even on abort.
SimulationResult run_simulation(const SimulationConfig& config);

}  // namespace ncpflow

#endif
