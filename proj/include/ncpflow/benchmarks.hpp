#ifndef NCPFLOW_BENCHMARKS_HPP
#define NCPFLOW_BENCHMARKS_HPP

#include <array>
#include <cstdint>
#include <string>

#include "ncpflow/config.hpp"

namespace ncpflow {

/// MoMaS-style gas injection benchmark: 200 m x 20 m homogeneous domain,
/// quasi-1D, hydrogen injected on the left, Dirichlet outlet on the right.
/// entry_pressure in {2e6, 2e3} Pa, cells in {200, 400}; end time in years.
SimulationConfig benchmark_momas(double entry_pressure, int cells, CFunctionKind method,
                                 double end_time_years = 5.0e5);

/// Heterogeneous desk-scale cases: dim == 2 is a 762 m x 15.24 m strip on a
/// 100 x 20 mesh, dim == 3 a 50 x 30 x 20 m box on a 50 x 30 x 20 mesh with
/// corner injection. Permeability/porosity come from raster files when given,
/// otherwise from a seeded synthetic field inside the reference ranges
/// [1.377e-20, 2.117e-15] m^2 and [0.002, 0.1].
SimulationConfig benchmark_heterogeneous(int dim, CFunctionKind method,
                                         const std::string& perm_file = "",
                                         const std::string& poro_file = "",
                                         std::uint64_t seed = 2024);

/// Deterministic synthetic fields used by benchmark_heterogeneous (exposed
/// for tests): log-uniform permeability and uniform porosity in the ranges
/// above, independent of platform RNG distributions.
std::vector<double> synthetic_permeability(const std::array<int, 3>& dims, std::uint64_t seed);
std::vector<double> synthetic_porosity(const std::array<int, 3>& dims, std::uint64_t seed);

}  // namespace ncpflow

#endif
