#ifndef NCPFLOW_MESH_HPP
#define NCPFLOW_MESH_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace ncpflow {

/// Sides of an axis-aligned box, used to tag boundary faces.
enum class BoundarySide : int { XMin = 0, XMax, YMin, YMax, ZMin, ZMax };

/// A face of the mesh. Interior faces connect two cells; boundary faces
/// belong to one cell and carry the side they sit on. Distances are
/// center-to-center for interior faces and center-to-face for boundary ones.
struct Face {
  int left = -1;    ///< owning cell
  int right = -1;   ///< neighbor cell, or -1 on the boundary
  int axis = 0;     ///< 0=x, 1=y, 2=z
  double area = 0.0;
  double dist_left = 0.0;   ///< half-distance from left center to the face
  double dist_right = 0.0;  ///< half-distance from face to right center (0 on boundary)
  BoundarySide side = BoundarySide::XMin;  ///< meaningful only when right < 0
  std::array<double, 3> center{0.0, 0.0, 0.0};

  double distance() const { return dist_left + dist_right; }
  bool interior() const { return right >= 0; }
};

/// Per-cell rock properties.
struct RockField {
  std::vector<double> permeability;  ///< m^2, > 0
  std::vector<double> porosity;      ///< (0, 1]

  static RockField uniform(std::size_t n, double perm, double poro);
  void validate(std::size_t n_cells) const;
};

/// Structured cell-centered Cartesian mesh with lexicographic cell ordering:
/// id = i + nx*j + nx*ny*k.
class CartesianMesh {
 public:
  CartesianMesh(std::array<int, 3> dims, std::array<double, 3> cell_size,
                std::array<double, 3> origin = {0.0, 0.0, 0.0});

  int nx() const { return dims_[0]; }
  int ny() const { return dims_[1]; }
  int nz() const { return dims_[2]; }
  int num_cells() const { return dims_[0] * dims_[1] * dims_[2]; }
  const std::array<double, 3>& cell_size() const { return cell_size_; }
  const std::array<double, 3>& origin() const { return origin_; }

  double cell_volume() const { return cell_size_[0] * cell_size_[1] * cell_size_[2]; }

  int cell_id(int i, int j, int k) const { return i + dims_[0] * (j + dims_[1] * k); }
  std::array<int, 3> cell_ijk(int id) const;
  std::array<double, 3> cell_center(int id) const;

  const std::vector<Face>& interior_faces() const { return interior_faces_; }
  const std::vector<Face>& boundary_faces() const { return boundary_faces_; }

  /// Cell ids adjacent to the given cell (face neighbors).
  std::vector<int> neighbors(int id) const;

 private:
  std::array<int, 3> dims_;
  std::array<double, 3> cell_size_;
  std::array<double, 3> origin_;
  std::vector<Face> interior_faces_;
  std::vector<Face> boundary_faces_;
};

CartesianMesh build_mesh(std::array<int, 3> dims, std::array<double, 3> cell_size,
                         std::array<double, 3> origin = {0.0, 0.0, 0.0});

/// TPFA transmissibility of a face (m^3): area * K_harm / distance with the
/// distance-weighted harmonic permeability mean. Boundary faces use the
/// owning cell's permeability over the half distance.
double face_transmissibility(const Face& face, const RockField& rock);

/// Reads one value per line in lexicographic cell order; throws if the count
/// does not equal n_cells.
std::vector<double> read_raster(const std::string& path, std::size_t n_cells);

}  // namespace ncpflow

#endif
