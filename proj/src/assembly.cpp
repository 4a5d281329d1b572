#include "ncpflow/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace ncpflow {

StateVector StateVector::uniform(std::size_t n, double p, double s, double rho) {
  StateVector st;
  st.p_l.assign(n, p);
  st.s_l.assign(n, s);
  st.rho_lh.assign(n, rho);
  return st;
}

bool StateVector::finite() const {
  for (const auto* arr : {&p_l, &s_l, &rho_lh})
    for (double v : *arr)
      if (!std::isfinite(v)) return false;
  return true;
}

namespace {

// Cached pointwise evaluations for one cell (or a Dirichlet ghost).
struct CellEval {
  double p = 0.0, s = 0.0, r = 0.0;
  double pc = 0.0, dpc = 0.0;  // capillary pressure and d/dS_l
  double pg = 0.0;
  double mob_l = 0.0, dmob_l = 0.0;
  double mob_g = 0.0, dmob_g = 0.0;
  double rho_l = 0.0;            // rho_w_std + rho_lh
  double sc = 0.0, dsc = 0.0;    // clamp(S_l, 0, 1) and its derivative
  double phi = 0.0;
};

CellEval eval_cell(double p, double s, double r, double phi, const FluidParams& fluid,
                   const VanGenuchtenParams& vg) {
  CellEval e;
  e.p = p;
  e.s = s;
  e.r = r;
  const ValDer pc = capillary_pressure(s, vg);
  e.pc = pc.value;
  e.dpc = pc.deriv;
  e.pg = p + pc.value;
  const ValDer ml = mobility(Phase::Liquid, s, fluid, vg);
  const ValDer mg = mobility(Phase::Gas, s, fluid, vg);
  e.mob_l = ml.value;
  e.dmob_l = ml.deriv;
  e.mob_g = mg.value;
  e.dmob_g = mg.deriv;
  e.rho_l = fluid.rho_w_std + r;
  e.sc = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
  e.dsc = (s > 0.0 && s < 1.0) ? 1.0 : 0.0;
  e.phi = phi;
  return e;
}

// Mass fluxes through a face from L to R (positive = leaving L), with partial
// derivatives ordered [P_L, S_L, rho_L, P_R, S_R, rho_R]. Upwind directions
// are frozen at the evaluation state.
struct FaceFluxes {
  double fw = 0.0, fh = 0.0;
  double dfw[6] = {0, 0, 0, 0, 0, 0};
  double dfh[6] = {0, 0, 0, 0, 0, 0};
};

FaceFluxes face_fluxes(const CellEval& L, const CellEval& R, double trans, double gdot,
                       double diff_geom, const FluidParams& fluid) {
  FaceFluxes f;
  const double cv = fluid.c_v();
  const double rho_w = fluid.rho_w_std;

  // Liquid phase potential difference.
  const double dpot_l = (L.p - R.p) - 0.5 * (L.rho_l + R.rho_l) * gdot;
  double ddpot_l[6] = {1.0, 0.0, -0.5 * gdot, -1.0, 0.0, -0.5 * gdot};

  // Gas phase potential difference (gas density C_v * P_g in the gravity term).
  const double cgl = 1.0 - 0.5 * cv * gdot;
  const double cgr = -1.0 - 0.5 * cv * gdot;
  const double dpot_g = (L.pg - R.pg) - 0.5 * cv * (L.pg + R.pg) * gdot;
  double ddpot_g[6] = {cgl, cgl * L.dpc, 0.0, cgr, cgr * R.dpc, 0.0};

  // Liquid advection: upwind mobility and advected concentration.
  const bool up_l_left = dpot_l >= 0.0;
  const CellEval& ul = up_l_left ? L : R;
  const int ol = up_l_left ? 0 : 3;  // offset of the upwind cell's variables

  const double adv_l = trans * ul.mob_l * dpot_l;
  // Water component: rho_w_std * q_l.
  f.fw += rho_w * adv_l;
  for (int i = 0; i < 6; ++i) f.dfw[i] += rho_w * trans * ul.mob_l * ddpot_l[i];
  f.dfw[ol + 1] += rho_w * trans * ul.dmob_l * dpot_l;
  // Dissolved hydrogen advected with the liquid.
  f.fh += ul.r * adv_l;
  for (int i = 0; i < 6; ++i) f.dfh[i] += ul.r * trans * ul.mob_l * ddpot_l[i];
  f.dfh[ol + 1] += ul.r * trans * ul.dmob_l * dpot_l;
  f.dfh[ol + 2] += adv_l;

  // Gas advection: rho_g^h = C_v * P_g at the upwind cell.
  const bool up_g_left = dpot_g >= 0.0;
  const CellEval& ug = up_g_left ? L : R;
  const int og = up_g_left ? 0 : 3;
  const double conc_g = cv * ug.pg;
  f.fh += conc_g * trans * ug.mob_g * dpot_g;
  for (int i = 0; i < 6; ++i) f.dfh[i] += conc_g * trans * ug.mob_g * ddpot_g[i];
  f.dfh[og + 1] += trans * dpot_g * (conc_g * ug.dmob_g + ug.mob_g * cv * ug.dpc);
  f.dfh[og + 0] += trans * dpot_g * ug.mob_g * cv;

  // Molecular diffusion of dissolved hydrogen, arithmetic-mean prefactor.
  const double pre = 0.5 * (L.phi * L.sc + R.phi * R.sc) * fluid.diffusion;
  const double jd = pre * diff_geom * (L.r - R.r);
  const double djd_r = pre * diff_geom;
  const double djd_sl = 0.5 * L.phi * L.dsc * fluid.diffusion * diff_geom * (L.r - R.r);
  const double djd_sr = 0.5 * R.phi * R.dsc * fluid.diffusion * diff_geom * (L.r - R.r);

  f.fw -= jd;
  f.dfw[2] -= djd_r;
  f.dfw[5] += djd_r;
  f.dfw[1] -= djd_sl;
  f.dfw[4] -= djd_sr;
  f.fh += jd;
  f.dfh[2] += djd_r;
  f.dfh[5] -= djd_r;
  f.dfh[1] += djd_sl;
  f.dfh[4] += djd_sr;

  return f;
}

}  // namespace

FlowAssembler::FlowAssembler(const CartesianMesh& mesh, RockField rock, FluidParams fluid,
                             VanGenuchtenParams vg, std::vector<BoundaryCondition> bcs,
                             std::array<double, 3> gravity)
    : mesh_(&mesh),
      rock_(std::move(rock)),
      fluid_(fluid),
      vg_(vg),
      bcs_(std::move(bcs)),
      gravity_(gravity) {
  rock_.validate(mesh.num_cells());
  fluid_.validate();
  vg_.validate();
  if (bcs_.size() != mesh.boundary_faces().size())
    throw std::invalid_argument("FlowAssembler: need one boundary condition per boundary face");

  const int n = mesh.num_cells();
  pattern_.assign(3 * n, {});
  for (int j = 0; j < n; ++j) {
    std::vector<int> cells = mesh.neighbors(j);
    cells.push_back(j);
    for (int row : {j, n + j}) {
      for (int c : cells) {
        pattern_[row].push_back(c);
        pattern_[row].push_back(n + c);
        pattern_[row].push_back(2 * n + c);
      }
    }
    pattern_[2 * n + j] = {j, n + j, 2 * n + j};
  }
}

void FlowAssembler::accumulate_fluxes(const StateVector& state, std::vector<double>& h,
                                      GlobalSystem* sys) const {
  const int n = mesh_->num_cells();
  std::vector<CellEval> cells(n);
  for (int j = 0; j < n; ++j)
    cells[j] = eval_cell(state.p_l[j], state.s_l[j], state.rho_lh[j], rock_.porosity[j],
                         fluid_, vg_);

  auto scatter = [&](int cell, int row_offset, double flux, const double* dflux, int other,
                     double sign) {
    h[row_offset + cell] += sign * flux;
    if (!sys) return;
    const int row = row_offset + cell;
    auto& m = sys->matrix;
    m.add(row, cell, sign * dflux[0]);
    m.add(row, n + cell, sign * dflux[1]);
    m.add(row, 2 * n + cell, sign * dflux[2]);
    if (other >= 0) {
      m.add(row, other, sign * dflux[3]);
      m.add(row, n + other, sign * dflux[4]);
      m.add(row, 2 * n + other, sign * dflux[5]);
    }
  };

  for (const Face& face : mesh_->interior_faces()) {
    const int L = face.left, R = face.right;
    const double trans = face_transmissibility(face, rock_);
    const auto cl = mesh_->cell_center(L);
    const auto cr = mesh_->cell_center(R);
    double gdot = 0.0;
    for (int d = 0; d < 3; ++d) gdot += gravity_[d] * (cl[d] - cr[d]);
    const double diff_geom = face.area / face.distance();
    const FaceFluxes f = face_fluxes(cells[L], cells[R], trans, gdot, diff_geom, fluid_);
    scatter(L, 0, f.fw, f.dfw, R, 1.0);
    scatter(L, n, f.fh, f.dfh, R, 1.0);
    // Mirrored contribution to the neighbor row: swap local variable order.
    const double dfw_r[6] = {f.dfw[3], f.dfw[4], f.dfw[5], f.dfw[0], f.dfw[1], f.dfw[2]};
    const double dfh_r[6] = {f.dfh[3], f.dfh[4], f.dfh[5], f.dfh[0], f.dfh[1], f.dfh[2]};
    scatter(R, 0, f.fw, dfw_r, L, -1.0);
    scatter(R, n, f.fh, dfh_r, L, -1.0);
  }

  const auto& bfaces = mesh_->boundary_faces();
  for (std::size_t bf = 0; bf < bfaces.size(); ++bf) {
    const Face& face = bfaces[bf];
    const BoundaryCondition& bc = bcs_[bf];
    const int L = face.left;
    if (bc.kind == BoundaryCondition::Kind::NeumannFlux) {
      h[L] -= bc.water_flux * face.area;
      h[n + L] -= bc.hydrogen_flux * face.area;
      continue;
    }
    // Dirichlet ghost value at the face center, half-cell transmissibility.
    const CellEval ghost = eval_cell(bc.p_l, bc.s_l, bc.rho_lh, rock_.porosity[L], fluid_, vg_);
    const double trans = face_transmissibility(face, rock_);
    const auto cl = mesh_->cell_center(L);
    double gdot = 0.0;
    for (int d = 0; d < 3; ++d) gdot += gravity_[d] * (cl[d] - face.center[d]);
    const double diff_geom = face.area / face.dist_left;
    const FaceFluxes f = face_fluxes(cells[L], ghost, trans, gdot, diff_geom, fluid_);
    scatter(L, 0, f.fw, f.dfw, -1, 1.0);
    scatter(L, n, f.fh, f.dfh, -1, 1.0);
  }
}

std::vector<double> FlowAssembler::residual_pde(const StateVector& state_new,
                                                const StateVector& state_old, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("residual_pde: dt must be positive");
  const int n = mesh_->num_cells();
  std::vector<double> h(2 * n, 0.0);
  const double vol = mesh_->cell_volume();
  const double cv = fluid_.c_v();
  for (int j = 0; j < n; ++j) {
    const double coef = rock_.porosity[j] * vol / dt;
    h[j] = coef * fluid_.rho_w_std * (state_new.s_l[j] - state_old.s_l[j]);
    const double pg_new = gas_pressure(state_new.p_l[j], state_new.s_l[j], vg_);
    const double pg_old = gas_pressure(state_old.p_l[j], state_old.s_l[j], vg_);
    const double m_new =
        state_new.rho_lh[j] * state_new.s_l[j] + cv * pg_new * (1.0 - state_new.s_l[j]);
    const double m_old =
        state_old.rho_lh[j] * state_old.s_l[j] + cv * pg_old * (1.0 - state_old.s_l[j]);
    h[n + j] = coef * (m_new - m_old);
  }
  accumulate_fluxes(state_new, h, nullptr);
  return h;
}

ConstraintArgs FlowAssembler::constraint_args(const StateVector& state) const {
  const int n = mesh_->num_cells();
  const double ch = fluid_.c_h();
  ConstraintArgs args;
  args.a.resize(n);
  args.b.resize(n);
  for (int j = 0; j < n; ++j) {
    args.a[j] = 1.0 - state.s_l[j];
    args.b[j] = ch * gas_pressure(state.p_l[j], state.s_l[j], vg_) - state.rho_lh[j];
  }
  return args;
}

GlobalSystem FlowAssembler::assemble_global(const StateVector& state_new,
                                            const StateVector& state_old, double dt,
                                            CFunctionKind kind, double tau) const {
  if (!(dt > 0.0)) throw std::invalid_argument("assemble_global: dt must be positive");
  const int n = mesh_->num_cells();
  GlobalSystem sys;
  sys.n_cells = n;
  sys.matrix = SparseMatrix::from_pattern(3 * n, 3 * n, pattern_);
  sys.rhs.assign(3 * n, 0.0);

  std::vector<double> h(2 * n, 0.0);
  const double vol = mesh_->cell_volume();
  const double cv = fluid_.c_v();
  const double ch = fluid_.c_h();

  for (int j = 0; j < n; ++j) {
    const double coef = rock_.porosity[j] * vol / dt;
    const ValDer pc = capillary_pressure(state_new.s_l[j], vg_);
    const double pg_new = state_new.p_l[j] + pc.value;
    const double pg_old = gas_pressure(state_old.p_l[j], state_old.s_l[j], vg_);
    const double s = state_new.s_l[j];
    const double r = state_new.rho_lh[j];

    h[j] = coef * fluid_.rho_w_std * (s - state_old.s_l[j]);
    sys.matrix.add(j, n + j, coef * fluid_.rho_w_std);

    const double m_new = r * s + cv * pg_new * (1.0 - s);
    const double m_old =
        state_old.rho_lh[j] * state_old.s_l[j] + cv * pg_old * (1.0 - state_old.s_l[j]);
    h[n + j] = coef * (m_new - m_old);
    sys.matrix.add(n + j, j, coef * cv * (1.0 - s));
    sys.matrix.add(n + j, n + j, coef * (r + cv * pc.deriv * (1.0 - s) - cv * pg_new));
    sys.matrix.add(n + j, 2 * n + j, coef * s);
  }

  accumulate_fluxes(state_new, h, &sys);
  for (int i = 0; i < 2 * n; ++i) sys.rhs[i] = -h[i];

  // Constraint rows.
  for (int j = 0; j < n; ++j) {
    const ValDer pc = capillary_pressure(state_new.s_l[j], vg_);
    const double a = 1.0 - state_new.s_l[j];
    const double b = ch * (state_new.p_l[j] + pc.value) - state_new.rho_lh[j];
    const RowCoefficients rc = c_function_gradient(kind, a, b, tau);
    // da/du = (0, -1, 0); db/du = (C_h, C_h * Pc', -1).
    sys.matrix.set(2 * n + j, j, rc.cb * ch);
    sys.matrix.set(2 * n + j, n + j, -rc.ca + rc.cb * ch * pc.deriv);
    sys.matrix.set(2 * n + j, 2 * n + j, -rc.cb);
    sys.rhs[2 * n + j] = -c_function_nonsmooth(kind, a, b);
  }
  return sys;
}

std::pair<double, double> FlowAssembler::mass_inventory(const StateVector& state) const {
  const int n = mesh_->num_cells();
  const double vol = mesh_->cell_volume();
  const double cv = fluid_.c_v();
  double water = 0.0, hydrogen = 0.0;
  for (int j = 0; j < n; ++j) {
    const double phi_v = rock_.porosity[j] * vol;
    water += phi_v * fluid_.rho_w_std * state.s_l[j];
    const double pg = gas_pressure(state.p_l[j], state.s_l[j], vg_);
    hydrogen += phi_v * (state.rho_lh[j] * state.s_l[j] + cv * pg * (1.0 - state.s_l[j]));
  }
  return {water, hydrogen};
}

std::pair<double, double> FlowAssembler::boundary_inflow_rates(const StateVector& state) const {
  const int n = mesh_->num_cells();
  std::vector<CellEval> cells(n);
  for (int j = 0; j < n; ++j)
    cells[j] = eval_cell(state.p_l[j], state.s_l[j], state.rho_lh[j], rock_.porosity[j],
                         fluid_, vg_);
  double water = 0.0, hydrogen = 0.0;
  const auto& bfaces = mesh_->boundary_faces();
  for (std::size_t bf = 0; bf < bfaces.size(); ++bf) {
    const Face& face = bfaces[bf];
    const BoundaryCondition& bc = bcs_[bf];
    if (bc.kind == BoundaryCondition::Kind::NeumannFlux) {
      water += bc.water_flux * face.area;
      hydrogen += bc.hydrogen_flux * face.area;
      continue;
    }
    const CellEval ghost =
        eval_cell(bc.p_l, bc.s_l, bc.rho_lh, rock_.porosity[face.left], fluid_, vg_);
    const double trans = face_transmissibility(face, rock_);
    const auto cl = mesh_->cell_center(face.left);
    double gdot = 0.0;
    for (int d = 0; d < 3; ++d) gdot += gravity_[d] * (cl[d] - face.center[d]);
    const double diff_geom = face.area / face.dist_left;
    const FaceFluxes f = face_fluxes(cells[face.left], ghost, trans, gdot, diff_geom, fluid_);
    water -= f.fw;  // f is positive when leaving the domain
    hydrogen -= f.fh;
  }
  return {water, hydrogen};
}

}  // namespace ncpflow
