#include "ncpflow/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncpflow {

double residual_norm(const std::vector<double>& h, const std::vector<double>& theta) {
  double s = 0.0;
  for (double v : h) s += v * v;
  for (double v : theta) s += v * v;
  return std::sqrt(s);
}

namespace {

struct Scaling {
  std::vector<double> row;  // 3N
  std::vector<double> col;  // 3N
};

// Water and hydrogen rows are scaled by reference accumulation rates so the
// single tolerance is meaningful across equations of different units; the
// hydrogen reference uses C_h * P_ref since dissolved concentrations live on
// that scale, not on the water density scale.
Scaling make_scaling(const FlowAssembler& assembler, double dt, const NewtonConfig& cfg) {
  const int n = assembler.mesh().num_cells();
  const double vol = assembler.mesh().cell_volume();
  const double ch_pref = assembler.fluid().c_h() * cfg.pressure_ref;
  Scaling sc;
  sc.row.assign(3 * n, 1.0);
  sc.col.assign(3 * n, 1.0);
  for (int j = 0; j < n; ++j) {
    const double base = vol * assembler.rock().porosity[j] / dt;
    sc.row[j] = base * assembler.fluid().rho_w_std;
    sc.row[n + j] = base * ch_pref;
    sc.row[2 * n + j] = std::max(1.0, ch_pref);
    sc.col[j] = cfg.pressure_ref;
    sc.col[n + j] = 1.0;
    sc.col[2 * n + j] = ch_pref;
  }
  return sc;
}

// Root-mean-square of the row-scaled residual. The RMS (rather than plain L2)
// keeps the convergence test resolution-independent and leaves headroom above
// the rounding floor of the flux sums at large time steps.
double scaled_norm(const std::vector<double>& h, const std::vector<double>& theta,
                   const Scaling& sc, bool raw) {
  if (raw) return residual_norm(h, theta);
  const std::size_t n2 = h.size();
  const std::size_t n = theta.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n2; ++i) {
    const double v = h[i] / sc.row[i];
    s += v * v;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double v = theta[j] / sc.row[n2 + j];
    s += v * v;
  }
  return std::sqrt(s / static_cast<double>(n2 + n));
}

std::pair<StateVector, NewtonReport> solve_step_impl(const FlowAssembler& assembler,
                                                     const StateVector& state_old, double dt,
                                                     const NewtonConfig& config,
                                                     const GmresConfig& gmres_cfg) {
  if (!(config.tau_reduction > 0.0 && config.tau_reduction < 1.0))
    throw std::invalid_argument("NewtonConfig: tau reduction factor must be in (0,1)");
  if (config.max_iterations < 1)
    throw std::invalid_argument("NewtonConfig: max_iterations must be >= 1");

  const int n = assembler.mesh().num_cells();
  const Scaling sc = make_scaling(assembler, dt, config);
  const bool smooth = is_smooth_kind(config.kind);
  double tau = smooth ? std::max(config.tau0, config.tau_floor) : 0.0;

  StateVector u = state_old;
  NewtonReport report;

  auto evaluate = [&](const StateVector& state, std::vector<double>& h,
                      std::vector<double>& theta, ConstraintArgs& args) {
    h = assembler.residual_pde(state, state_old, dt);
    args = assembler.constraint_args(state);
    theta.resize(n);
    for (int j = 0; j < n; ++j)
      theta[j] = c_function_nonsmooth(config.kind, args.a[j], args.b[j]);
  };

  std::vector<double> h, theta;
  ConstraintArgs args;
  evaluate(u, h, theta, args);
  double res = scaled_norm(h, theta, sc, config.raw_norm);
  report.residual_history.push_back(res);

  auto finish = [&](bool converged) {
    report.converged = converged;
    report.iterations = static_cast<int>(report.linear_iterations.size());
    report.complementarity = complementarity_violation(args.a, args.b);
    report.final_tau = tau;
    return std::make_pair(std::move(u), std::move(report));
  };

  if (!std::isfinite(res)) return finish(false);
  if (res <= config.tolerance) return finish(true);

  for (int k = 0; k < config.max_iterations; ++k) {
    GlobalSystem sys = assembler.assemble_global(u, state_old, dt, config.kind, tau);

    // Row/column equilibration: solve (Dr^-1 A Dc) y = Dr^-1 rhs, du = Dc y.
    // Columns use the physical unknown scales; rows are then normalized by
    // their max-abs entry, which keeps flux-dominated rows (high permeability,
    // low porosity) on the same footing as accumulation-dominated ones.
    SparseMatrix& m = sys.matrix;
    {
      const auto& rp = m.row_ptr();
      const auto& ci = m.col_idx();
      auto& vals = m.values();
      for (int r = 0; r < 3 * n; ++r)
        for (int kk = rp[r]; kk < rp[r + 1]; ++kk) vals[kk] *= sc.col[ci[kk]];
      for (int r = 0; r < 3 * n; ++r) {
        double rmax = 0.0;
        for (int kk = rp[r]; kk < rp[r + 1]; ++kk)
          rmax = std::max(rmax, std::abs(vals[kk]));
        const double rs = (rmax > 0.0) ? rmax : 1.0;
        for (int kk = rp[r]; kk < rp[r + 1]; ++kk) vals[kk] /= rs;
        sys.rhs[r] /= rs;
      }
    }

    BlockPreconditioner block_prec;
    const bool prec_ok = block_prec.setup(m, n);
    IdentityPreconditioner identity;
    const Preconditioner& prec =
        prec_ok ? static_cast<const Preconditioner&>(block_prec) : identity;

    const GmresResult lin = gmres_solve(m, sys.rhs, {}, prec, gmres_cfg);
    report.linear_iterations.push_back(lin.iterations);
    if (!lin.converged) return finish(false);

    for (int j = 0; j < n; ++j) {
      u.p_l[j] += sc.col[j] * lin.x[j];
      u.s_l[j] += sc.col[n + j] * lin.x[n + j];
      u.rho_lh[j] += sc.col[2 * n + j] * lin.x[2 * n + j];
    }
    if (smooth) tau = std::max(config.tau_reduction * tau, config.tau_floor);

    if (!u.finite()) return finish(false);
    evaluate(u, h, theta, args);
    res = scaled_norm(h, theta, sc, config.raw_norm);
    report.residual_history.push_back(res);
    if (!std::isfinite(res)) return finish(false);
    if (res <= config.tolerance) return finish(true);
  }
  return finish(false);
}

}  // namespace

std::pair<StateVector, NewtonReport> solve_step_semismooth(
    const FlowAssembler& assembler, const StateVector& state_old, double dt,
    const NewtonConfig& config, const GmresConfig& gmres) {
  if (config.kind != CFunctionKind::Min && config.kind != CFunctionKind::FischerBurmeister)
    throw std::invalid_argument("solve_step_semismooth: kind must be Min or FischerBurmeister");
  return solve_step_impl(assembler, state_old, dt, config, gmres);
}

std::pair<StateVector, NewtonReport> solve_step_smoothing(
    const FlowAssembler& assembler, const StateVector& state_old, double dt,
    const NewtonConfig& config, const GmresConfig& gmres) {
  if (!is_smooth_kind(config.kind))
    throw std::invalid_argument("solve_step_smoothing: kind must be a smooth C-function");
  return solve_step_impl(assembler, state_old, dt, config, gmres);
}

std::pair<StateVector, NewtonReport> solve_step(const FlowAssembler& assembler,
                                                const StateVector& state_old, double dt,
                                                const NewtonConfig& config,
                                                const GmresConfig& gmres) {
  return solve_step_impl(assembler, state_old, dt, config, gmres);
}

}  // namespace ncpflow
