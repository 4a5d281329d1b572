#ifndef NCPFLOW_NEWTON_HPP
#define NCPFLOW_NEWTON_HPP

#include <vector>

#include "ncpflow/assembly.hpp"
#include "ncpflow/gmres.hpp"
#include "ncpflow/ncp.hpp"
#include "ncpflow/preconditioner.hpp"

namespace ncpflow {

struct NewtonConfig {
  double tolerance = 1.0e-6;  ///< on the (scaled) stacked residual norm
  int max_iterations = 20;
  CFunctionKind kind = CFunctionKind::SmoothFischerBurmeister;
  double tau0 = 1.0e-6;        ///< initial smoothing parameter (smooth kinds)
  double tau_reduction = 0.1;  ///< beta in (0,1)
  double tau_floor = 1.0e-14;
  bool raw_norm = false;  ///< skip per-equation residual scaling
  double pressure_ref = 1.0e6;  ///< Pa, sets residual/update scaling
};

/// Per-step solver telemetry.
struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  ///< length iterations + 1
  std::vector<int> linear_iterations;    ///< one entry per Newton iteration
  double complementarity = 0.0;          ///< violation at the final state
  double final_tau = 0.0;
};

/// Euclidean norm of the stacked (H; Theta) residual.
double residual_norm(const std::vector<double>& h, const std::vector<double>& theta);

/// One backward-Euler step with the semi-smooth Newton method (Min or
/// Fischer-Burmeister rows) started from state_old; full undamped updates.
std::pair<StateVector, NewtonReport> solve_step_semismooth(
    const FlowAssembler& assembler, const StateVector& state_old, double dt,
    const NewtonConfig& config, const GmresConfig& gmres);

/// One backward-Euler step with the Jacobian smoothing method: smooth
/// gradient rows against the non-smooth residual, tau driven down by beta
/// each iteration and clamped at the floor.
std::pair<StateVector, NewtonReport> solve_step_smoothing(
    const FlowAssembler& assembler, const StateVector& state_old, double dt,
    const NewtonConfig& config, const GmresConfig& gmres);

/// Dispatches on config.kind.
std::pair<StateVector, NewtonReport> solve_step(const FlowAssembler& assembler,
                                                const StateVector& state_old, double dt,
                                                const NewtonConfig& config,
                                                const GmresConfig& gmres);

}  // namespace ncpflow

#endif
