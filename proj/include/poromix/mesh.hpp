#ifndef POROMIX_MESH_HPP
#define POROMIX_MESH_HPP

#include "poromix/types.hpp"

#include <array>
#include <vector>

namespace poromix {

/// Axis-aligned rectilinear grid of quadrilaterals (dim=2) or hexahedra
/// (dim=3). Entity numbering is lexicographic with the first axis running
/// fastest; faces are grouped by normal axis (all x-normal faces first, then
/// y, then z) and oriented globally along the positive axis. Immutable after
/// construction.
struct StructuredMesh {
  int dim = 0;
  std::array<int, 3> cells{};                   // cells per axis (1 on unused axes)
  std::array<std::vector<double>, 3> coords;    // node coordinates per axis

  int n_cells = 0;
  int n_nodes = 0;
  int n_faces = 0;
  std::array<int, 4> face_offset{};             // face id ranges per normal axis

  std::vector<std::array<int, 8>> cell_nodes;   // 2^dim entries used
  std::vector<std::array<int, 6>> cell_faces;   // order [x-,x+,y-,y+,z-,z+]
  std::vector<std::array<int, 2>> face_cells;   // [low side, high side], -1 if none
  std::vector<double> face_area;

  int faces_per_cell() const { return 2 * dim; }
  int nodes_per_cell() const { return 1 << dim; }

  int cell_index(int i, int j, int k) const {
    return i + cells[0] * (j + cells[1] * k);
  }
  std::array<int, 3> cell_multi_index(int c) const;
  int node_index(int i, int j, int k) const;
  int face_index(int axis, int i, int j, int k) const;

  int face_axis(int f) const;
  bool is_boundary_face(int f) const {
    return face_cells[f][0] < 0 || face_cells[f][1] < 0;
  }

  /// Outward-normal sign of local face `loc` of any cell: -1 on the low side
  /// of the axis, +1 on the high side.
  static int outward_sign(int loc) { return (loc % 2 == 0) ? -1 : 1; }

  std::array<double, 3> cell_extents(int c) const;
  double cell_volume(int c) const;
  Point cell_center(int c) const;
  Point node_position(int n) const;
  Point face_center(int f) const;

  /// Domain side (0..2*dim-1, [x-,x+,y-,y+,z-,z+]) a boundary face lies on.
  int face_boundary_side(int f) const;
  /// All domain sides a node lies on (empty for interior nodes).
  std::vector<int> node_boundary_sides(int n) const;

  /// Locates the cell containing x; coordinates on a grid line resolve to the
  /// lower cell, so ties go to the lowest cell index.
  int locate_cell(const Point& x) const;
};

StructuredMesh build_structured_mesh(int dim, const std::array<int, 3>& cells_per_axis,
                                     const std::array<double, 3>& lengths);

/// Variant with explicit (possibly graded) node coordinates per axis.
StructuredMesh build_structured_mesh(int dim,
                                     const std::array<std::vector<double>, 3>& axis_coords);

/// A 2x2 (2D) or 2x2x2 (3D) block of cells carrying the pressure-jump
/// stabilization; `internal_faces` are the faces interior to the block.
struct MacroElement {
  std::vector<int> cells;
  std::vector<int> internal_faces;
  double measure = 0.0;
};

struct MacroElementSet {
  std::vector<MacroElement> macros;
  std::vector<int> cell_to_macro;
};

/// Partitions the mesh into macro-elements. Requires an even cell count on
/// every axis; throws std::invalid_argument otherwise.
MacroElementSet build_macro_elements(const StructuredMesh& mesh);

}  // namespace poromix

#endif
