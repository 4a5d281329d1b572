#include "ncpflow/mesh.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ncpflow {

RockField RockField::uniform(std::size_t n, double perm, double poro) {
  RockField rock;
  rock.permeability.assign(n, perm);
  rock.porosity.assign(n, poro);
  rock.validate(n);
  return rock;
}

void RockField::validate(std::size_t n_cells) const {
  if (permeability.size() != n_cells || porosity.size() != n_cells)
    throw std::invalid_argument("RockField: array lengths must equal the cell count");
  for (double k : permeability)
    if (!(k > 0.0)) throw std::invalid_argument("RockField: permeability must be positive");
  for (double p : porosity)
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("RockField: porosity must be in (0,1]");
}

CartesianMesh::CartesianMesh(std::array<int, 3> dims, std::array<double, 3> cell_size,
                             std::array<double, 3> origin)
    : dims_(dims), cell_size_(cell_size), origin_(origin) {
  for (int d = 0; d < 3; ++d) {
    if (dims_[d] < 1) throw std::invalid_argument("CartesianMesh: dims must be >= 1");
    if (!(cell_size_[d] > 0.0)) throw std::invalid_argument("CartesianMesh: cell sizes must be positive");
  }

  const std::array<double, 3> h = cell_size_;
  const double face_area[3] = {h[1] * h[2], h[0] * h[2], h[0] * h[1]};

  for (int k = 0; k < dims_[2]; ++k) {
    for (int j = 0; j < dims_[1]; ++j) {
      for (int i = 0; i < dims_[0]; ++i) {
        const int id = cell_id(i, j, k);
        const auto c = cell_center(id);
        const int ijk[3] = {i, j, k};
        for (int axis = 0; axis < 3; ++axis) {
          // Interior face to the +axis neighbor.
          if (ijk[axis] + 1 < dims_[axis]) {
            Face f;
            f.left = id;
            int ni = i, nj = j, nk = k;
            if (axis == 0) ++ni; else if (axis == 1) ++nj; else ++nk;
            f.right = cell_id(ni, nj, nk);
            f.axis = axis;
            f.area = face_area[axis];
            f.dist_left = 0.5 * h[axis];
            f.dist_right = 0.5 * h[axis];
            f.center = c;
            f.center[axis] += 0.5 * h[axis];
            interior_faces_.push_back(f);
          } else {
            Face f;
            f.left = id;
            f.right = -1;
            f.axis = axis;
            f.area = face_area[axis];
            f.dist_left = 0.5 * h[axis];
            f.dist_right = 0.0;
            f.side = static_cast<BoundarySide>(2 * axis + 1);
            f.center = c;
            f.center[axis] += 0.5 * h[axis];
            boundary_faces_.push_back(f);
          }
          // Low-side boundary face.
          if (ijk[axis] == 0) {
            Face f;
            f.left = id;
            f.right = -1;
            f.axis = axis;
            f.area = face_area[axis];
            f.dist_left = 0.5 * h[axis];
            f.dist_right = 0.0;
            f.side = static_cast<BoundarySide>(2 * axis);
            f.center = c;
            f.center[axis] -= 0.5 * h[axis];
            boundary_faces_.push_back(f);
          }
        }
      }
    }
  }
}

std::array<int, 3> CartesianMesh::cell_ijk(int id) const {
  const int i = id % dims_[0];
  const int j = (id / dims_[0]) % dims_[1];
  const int k = id / (dims_[0] * dims_[1]);
  return {i, j, k};
}

std::array<double, 3> CartesianMesh::cell_center(int id) const {
  const auto ijk = cell_ijk(id);
  return {origin_[0] + (ijk[0] + 0.5) * cell_size_[0],
          origin_[1] + (ijk[1] + 0.5) * cell_size_[1],
          origin_[2] + (ijk[2] + 0.5) * cell_size_[2]};
}

std::vector<int> CartesianMesh::neighbors(int id) const {
  const auto [i, j, k] = cell_ijk(id);
  std::vector<int> out;
  if (i > 0) out.push_back(cell_id(i - 1, j, k));
  if (i + 1 < dims_[0]) out.push_back(cell_id(i + 1, j, k));
  if (j > 0) out.push_back(cell_id(i, j - 1, k));
  if (j + 1 < dims_[1]) out.push_back(cell_id(i, j + 1, k));
  if (k > 0) out.push_back(cell_id(i, j, k - 1));
  if (k + 1 < dims_[2]) out.push_back(cell_id(i, j, k + 1));
  return out;
}

CartesianMesh build_mesh(std::array<int, 3> dims, std::array<double, 3> cell_size,
                         std::array<double, 3> origin) {
  return CartesianMesh(dims, cell_size, origin);
}

double face_transmissibility(const Face& face, const RockField& rock) {
  const double kl = rock.permeability.at(face.left);
  if (!face.interior()) {
    return face.area * kl / face.dist_left;
  }
  const double kr = rock.permeability.at(face.right);
  // area / (dL/KL + dR/KR) == area * K_harm / (dL + dR)
  return face.area / (face.dist_left / kl + face.dist_right / kr);
}

std::vector<double> read_raster(const std::string& path, std::size_t n_cells) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open raster file: " + path);
  std::vector<double> values;
  values.reserve(n_cells);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    double v;
    if (ss >> v) values.push_back(v);
  }
  if (values.size() != n_cells)
    throw std::runtime_error("raster " + path + ": expected " + std::to_string(n_cells) +
                             " values, got " + std::to_string(values.size()));
  return values;
}

}  // namespace ncpflow
