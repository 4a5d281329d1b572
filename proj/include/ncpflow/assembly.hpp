#ifndef NCPFLOW_ASSEMBLY_HPP
#define NCPFLOW_ASSEMBLY_HPP

#include <array>
#include <utility>
#include <vector>

#include "ncpflow/constitutive.hpp"
#include "ncpflow/mesh.hpp"
#include "ncpflow/ncp.hpp"
#include "ncpflow/sparse.hpp"

namespace ncpflow {

/// Per-cell primary unknowns for the whole mesh.
struct StateVector {
  std::vector<double> p_l;     ///< liquid pressure, Pa
  std::vector<double> s_l;     ///< liquid saturation
  std::vector<double> rho_lh;  ///< dissolved hydrogen concentration, kg/m^3

  static StateVector uniform(std::size_t n, double p, double s, double rho);
  std::size_t size() const { return p_l.size(); }
  bool finite() const;
};

/// One condition per boundary face. Fluxes are mass fluxes in kg/m^2/s,
/// positive into the domain; impervious is a zero-flux Neumann condition.
struct BoundaryCondition {
  enum class Kind { NeumannFlux, Dirichlet };
  Kind kind = Kind::NeumannFlux;
  double water_flux = 0.0;
  double hydrogen_flux = 0.0;
  double p_l = 0.0;
  double s_l = 1.0;
  double rho_lh = 0.0;

  static BoundaryCondition impervious() { return {}; }
  static BoundaryCondition neumann(double water, double hydrogen) {
    BoundaryCondition bc;
    bc.water_flux = water;
    bc.hydrogen_flux = hydrogen;
    return bc;
  }
  static BoundaryCondition dirichlet(double p, double s, double rho) {
    BoundaryCondition bc;
    bc.kind = Kind::Dirichlet;
    bc.p_l = p;
    bc.s_l = s;
    bc.rho_lh = rho;
    return bc;
  }
};

/// Stacked 3N x 3N Newton system: rows 0..2N-1 from the PDEs, rows 2N..3N-1
/// from the complementarity constraints; unknowns ordered P | S | rho, each
/// block lexicographic in cell id. rhs = -(H; Theta).
struct GlobalSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  int n_cells = 0;
};

/// Fully-implicit cell-centered finite-volume discretization of the
/// water/hydrogen conservation laws with backward Euler, phase-potential
/// upwinding, and TPFA fluxes, plus the stacked constraint rows.
class FlowAssembler {
 public:
  FlowAssembler(const CartesianMesh& mesh, RockField rock, FluidParams fluid,
                VanGenuchtenParams vg, std::vector<BoundaryCondition> bcs,
                std::array<double, 3> gravity = {0.0, 0.0, 0.0});

  const CartesianMesh& mesh() const { return *mesh_; }
  const RockField& rock() const { return rock_; }
  const FluidParams& fluid() const { return fluid_; }
  const VanGenuchtenParams& vg() const { return vg_; }

  /// PDE residual H: water rows then hydrogen rows (length 2N).
  std::vector<double> residual_pde(const StateVector& state_new, const StateVector& state_old,
                                   double dt) const;

  /// Complementarity arguments (1 - S_l, C_h P_g - rho_l^h) of a state.
  ConstraintArgs constraint_args(const StateVector& state) const;

  /// Full Newton system for the selected C-function kind.
  GlobalSystem assemble_global(const StateVector& state_new, const StateVector& state_old,
                               double dt, CFunctionKind kind, double tau = 0.0) const;

  /// (water mass, hydrogen mass) in kg.
  std::pair<double, double> mass_inventory(const StateVector& state) const;

  /// Net boundary (water, hydrogen) mass inflow rates in kg/s, evaluated at
  /// the given state (Dirichlet fluxes computed from it, Neumann prescribed).
  std::pair<double, double> boundary_inflow_rates(const StateVector& state) const;

 private:
  struct CellProps;  // cached per-cell constitutive evaluations

  void accumulate_fluxes(const StateVector& state, std::vector<double>& h,
                         GlobalSystem* sys) const;

  const CartesianMesh* mesh_;
  RockField rock_;
  FluidParams fluid_;
  VanGenuchtenParams vg_;
  std::vector<BoundaryCondition> bcs_;
  std::array<double, 3> gravity_;
  std::vector<std::vector<int>> pattern_;  // fixed 3N sparsity pattern
};

}  // namespace ncpflow

#endif
