#include "ncpflow/vtk.hpp"

#include <fstream>
#include <stdexcept>

namespace ncpflow {

void write_vtk_snapshot(const std::string& path, const CartesianMesh& mesh,
                        const StateVector& state, const VanGenuchtenParams& vg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const int n = mesh.num_cells();
  out << "# vtk DataFile Version 3.0\n"
      << "ncpflow snapshot\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << mesh.nx() + 1 << ' ' << mesh.ny() + 1 << ' ' << mesh.nz() + 1 << '\n'
      << "ORIGIN " << mesh.origin()[0] << ' ' << mesh.origin()[1] << ' ' << mesh.origin()[2] << '\n'
      << "SPACING " << mesh.cell_size()[0] << ' ' << mesh.cell_size()[1] << ' '
      << mesh.cell_size()[2] << '\n'
      << "CELL_DATA " << n << '\n';

  out.precision(12);
  auto field = [&](const std::string& name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < n; ++j) out << value(j) << '\n';
  };
  field("liquid_pressure", [&](int j) { return state.p_l[j]; });
  field("liquid_saturation", [&](int j) { return state.s_l[j]; });
  field("dissolved_hydrogen", [&](int j) { return state.rho_lh[j]; });
  field("gas_saturation", [&](int j) { return 1.0 - state.s_l[j]; });
  field("gas_pressure", [&](int j) { return gas_pressure(state.p_l[j], state.s_l[j], vg); });
}

}  // namespace ncpflow
