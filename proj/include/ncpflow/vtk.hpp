#ifndef NCPFLOW_VTK_HPP
#define NCPFLOW_VTK_HPP

#include <string>

#include "ncpflow/assembly.hpp"

namespace ncpflow {

/// Writes a legacy-VTK structured-points snapshot with cell data for P_l,
/// S_l, rho_l^h and the derived S_g and P_g fields.
void write_vtk_snapshot(const std::string& path, const CartesianMesh& mesh,
                        const StateVector& state, const VanGenuchtenParams& vg);

}  // namespace ncpflow

#endif
