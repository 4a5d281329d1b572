#ifndef NCPFLOW_CONFIG_HPP
#define NCPFLOW_CONFIG_HPP

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "ncpflow/assembly.hpp"
#include "ncpflow/gmres.hpp"
#include "ncpflow/newton.hpp"

namespace ncpflow {

constexpr double kSecondsPerYear = 3.1536e7;
constexpr double kSecondsPerDay = 86400.0;

/// Axis-aligned patch of a boundary side; faces whose centers fall inside the
/// coordinate box get the condition. Defaults cover the whole side.
struct BoundaryRegionSpec {
  BoundarySide side = BoundarySide::XMin;
  std::array<double, 3> lo{-std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
  std::array<double, 3> hi{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
  BoundaryCondition bc;
};

struct TimeConfig {
  double dt_initial = 0.0;
  double dt_min = -1.0;  ///< < 0: defaults to 1e-3 * dt_initial
  double dt_max = -1.0;  ///< < 0: defaults to end_time / 4
  double end_time = 0.0;
};

struct OutputConfig {
  std::string directory;               ///< empty: no files written
  std::string ledger_name = "ledger.csv";
  bool write_vtk = true;
  std::vector<double> snapshot_times;  ///< s; the final state is always kept
};

struct SimulationConfig {
  std::array<int, 3> dims{1, 1, 1};
  std::array<double, 3> cell_size{1.0, 1.0, 1.0};
  std::array<double, 3> origin{0.0, 0.0, 0.0};

  // Rock: constant values, raster files, or explicit per-cell arrays
  // (array > file > constant).
  double permeability = -1.0;
  std::string permeability_file;
  std::vector<double> permeability_values;
  double porosity = -1.0;
  std::string porosity_file;
  std::vector<double> porosity_values;

  FluidParams fluid;
  VanGenuchtenParams vg;
  std::array<double, 3> gravity{0.0, 0.0, 0.0};

  double initial_p_l = 1.0e6;
  double initial_s_l = 1.0;
  double initial_rho_lh = 0.0;

  /// Sides not covered by any region are impervious. Later regions override
  /// earlier ones on overlapping faces.
  std::vector<BoundaryRegionSpec> regions;

  NewtonConfig newton;
  GmresConfig gmres;
  TimeConfig time;
  OutputConfig output;
  std::string name = "simulation";

  void validate() const;
  double dt_min_effective() const {
    return time.dt_min > 0.0 ? time.dt_min : 1.0e-3 * time.dt_initial;
  }
  double dt_max_effective() const {
    return time.dt_max > 0.0 ? time.dt_max : time.end_time / 4.0;
  }
};

RockField build_rock(const SimulationConfig& config, const CartesianMesh& mesh);
std::vector<BoundaryCondition> build_boundary_conditions(const SimulationConfig& config,
                                                         const CartesianMesh& mesh);

CFunctionKind parse_method(const std::string& name);  // "min" | "fb" | "sfb" | "smin"
std::string method_name(CFunctionKind kind);

/// Loads a config from the INI-style file format documented in the README.
SimulationConfig load_config(const std::string& path);

}  // namespace ncpflow

#endif
