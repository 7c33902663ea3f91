#include "poromix/mesh.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace poromix {

namespace {

int axis_nodes(const StructuredMesh& m, int a) {
  return a < m.dim ? m.cells[a] + 1 : 1;
}

}  // namespace

std::array<int, 3> StructuredMesh::cell_multi_index(int c) const {
  std::array<int, 3> idx{};
  idx[0] = c % cells[0];
  idx[1] = (c / cells[0]) % cells[1];
  idx[2] = c / (cells[0] * cells[1]);
  return idx;
}

int StructuredMesh::node_index(int i, int j, int k) const {
  const int nx = cells[0] + 1;
  const int ny = dim > 1 ? cells[1] + 1 : 1;
  return i + nx * (j + ny * k);
}

int StructuredMesh::face_index(int axis, int i, int j, int k) const {
  // Faces with normal `axis` are indexed lexicographically over the grid
  // positions, with the normal-axis position varied like any other index.
  std::array<int, 3> n = {cells[0], cells[1], cells[2]};
  n[axis] += 1;
  return face_offset[axis] + i + n[0] * (j + n[1] * k);
}

int StructuredMesh::face_axis(int f) const {
  for (int a = 0; a < dim; ++a) {
    if (f < face_offset[a + 1]) return a;
  }
  throw std::out_of_range("face id " + std::to_string(f) + " out of range");
}

std::array<double, 3> StructuredMesh::cell_extents(int c) const {
  const auto idx = cell_multi_index(c);
  std::array<double, 3> h = {1.0, 1.0, 1.0};
  for (int a = 0; a < dim; ++a) h[a] = coords[a][idx[a] + 1] - coords[a][idx[a]];
  return h;
}

double StructuredMesh::cell_volume(int c) const {
  const auto h = cell_extents(c);
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= h[a];
  return v;
}

Point StructuredMesh::cell_center(int c) const {
  const auto idx = cell_multi_index(c);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = 0.5 * (coords[a][idx[a]] + coords[a][idx[a] + 1]);
  return x;
}

Point StructuredMesh::node_position(int n) const {
  const int nx = cells[0] + 1;
  const int ny = dim > 1 ? cells[1] + 1 : 1;
  const int i = n % nx;
  const int j = (n / nx) % ny;
  const int k = n / (nx * ny);
  Point x{0.0, 0.0, 0.0};
  x[0] = coords[0][i];
  if (dim > 1) x[1] = coords[1][j];
  if (dim > 2) x[2] = coords[2][k];
  return x;
}

Point StructuredMesh::face_center(int f) const {
  const int axis = face_axis(f);
  int rel = f - face_offset[axis];
  std::array<int, 3> n = {cells[0], cells[1], cells[2]};
  n[axis] += 1;
  std::array<int, 3> idx{};
  idx[0] = rel % n[0];
  idx[1] = (rel / n[0]) % n[1];
  idx[2] = rel / (n[0] * n[1]);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    if (a == axis) {
      x[a] = coords[a][idx[a]];
    } else {
      x[a] = 0.5 * (coords[a][idx[a]] + coords[a][idx[a] + 1]);
    }
  }
  return x;
}

int StructuredMesh::face_boundary_side(int f) const {
  if (!is_boundary_face(f)) {
    throw std::invalid_argument("face " + std::to_string(f) + " is interior");
  }
  const int axis = face_axis(f);
  return 2 * axis + (face_cells[f][0] < 0 ? 0 : 1);
}

std::vector<int> StructuredMesh::node_boundary_sides(int n) const {
  const int nx = cells[0] + 1;
  const int ny = dim > 1 ? cells[1] + 1 : 1;
  const std::array<int, 3> idx = {n % nx, (n / nx) % ny, n / (nx * ny)};
  std::vector<int> sides;
  for (int a = 0; a < dim; ++a) {
    if (idx[a] == 0) sides.push_back(2 * a);
    if (idx[a] == cells[a]) sides.push_back(2 * a + 1);
  }
  return sides;
}

int StructuredMesh::locate_cell(const Point& x) const {
  std::array<int, 3> idx{};
  for (int a = 0; a < dim; ++a) {
    const auto& c = coords[a];
    if (x[a] < c.front() || x[a] > c.back()) {
      throw std::invalid_argument("point outside the mesh on axis " + std::to_string(a));
    }
    // upper_bound puts grid-line hits in the lower cell.
    auto it = std::upper_bound(c.begin(), c.end(), x[a]);
    int i = static_cast<int>(it - c.begin()) - 1;
    idx[a] = std::clamp(i, 0, cells[a] - 1);
    if (x[a] <= c[idx[a]] && idx[a] > 0) idx[a] -= 1;
  }
  return cell_index(idx[0], idx[1], idx[2]);
}

StructuredMesh build_structured_mesh(int dim, const std::array<int, 3>& cells_per_axis,
                                     const std::array<double, 3>& lengths) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  std::array<std::vector<double>, 3> coords;
  for (int a = 0; a < dim; ++a) {
    const int n = cells_per_axis[a];
    if (n < 1) throw std::invalid_argument("cells_per_axis must be >= 1 on every axis");
    if (!(lengths[a] > 0.0)) throw std::invalid_argument("lengths must be > 0 on every axis");
    coords[a].resize(n + 1);
    for (int i = 0; i <= n; ++i) coords[a][i] = lengths[a] * double(i) / double(n);
  }
  return build_structured_mesh(dim, coords);
}

StructuredMesh build_structured_mesh(int dim,
                                     const std::array<std::vector<double>, 3>& axis_coords) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  StructuredMesh m;
  m.dim = dim;
  m.coords = axis_coords;
  for (int a = 0; a < 3; ++a) {
    if (a < dim) {
      if (m.coords[a].size() < 2) {
        throw std::invalid_argument("need at least one cell on every axis");
      }
      for (std::size_t i = 0; i + 1 < m.coords[a].size(); ++i) {
        if (!(m.coords[a][i + 1] > m.coords[a][i])) {
          throw std::invalid_argument("axis coordinates must be strictly increasing");
        }
      }
      m.cells[a] = static_cast<int>(m.coords[a].size()) - 1;
    } else {
      m.coords[a] = {0.0};
      m.cells[a] = 1;
    }
  }

  const int nx = m.cells[0], ny = m.cells[1], nz = dim > 2 ? m.cells[2] : 1;
  m.n_cells = nx * ny * nz;
  m.n_nodes = (nx + 1) * (ny + 1) * (dim > 2 ? nz + 1 : 1);

  m.face_offset[0] = 0;
  m.face_offset[1] = (nx + 1) * ny * nz;
  m.face_offset[2] = m.face_offset[1] + nx * (ny + 1) * nz;
  m.face_offset[3] = m.face_offset[2] + (dim > 2 ? nx * ny * (nz + 1) : 0);
  m.n_faces = m.face_offset[dim];
  m.face_offset[3] = m.n_faces;
  if (dim == 2) m.face_offset[2] = m.n_faces;

  m.cell_nodes.resize(m.n_cells);
  m.cell_faces.resize(m.n_cells);
  m.face_cells.assign(m.n_faces, {-1, -1});
  m.face_area.assign(m.n_faces, 0.0);

  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = m.cell_index(i, j, k);
        auto& cn = m.cell_nodes[c];
        cn.fill(-1);
        int slot = 0;
        const int kmax = dim > 2 ? 1 : 0;
        for (int dk = 0; dk <= kmax; ++dk) {
          for (int dj = 0; dj <= 1; ++dj) {
            for (int di = 0; di <= 1; ++di) cn[slot++] = m.node_index(i + di, j + dj, k + dk);
          }
        }
        auto& cf = m.cell_faces[c];
        cf.fill(-1);
        cf[0] = m.face_index(0, i, j, k);
        cf[1] = m.face_index(0, i + 1, j, k);
        cf[2] = m.face_index(1, i, j, k);
        cf[3] = m.face_index(1, i, j + 1, k);
        if (dim > 2) {
          cf[4] = m.face_index(2, i, j, k);
          cf[5] = m.face_index(2, i, j, k + 1);
        }
        for (int loc = 0; loc < 2 * dim; ++loc) {
          // low-side entry of face_cells sees this face as its high face
          m.face_cells[cf[loc]][StructuredMesh::outward_sign(loc) > 0 ? 0 : 1] = c;
        }
        const auto h = m.cell_extents(c);
        const double vol = m.cell_volume(c);
        for (int a = 0; a < dim; ++a) {
          m.face_area[cf[2 * a]] = vol / h[a];
          m.face_area[cf[2 * a + 1]] = vol / h[a];
        }
      }
    }
  }
  return m;
}

MacroElementSet build_macro_elements(const StructuredMesh& mesh) {
  for (int a = 0; a < mesh.dim; ++a) {
    if (mesh.cells[a] % 2 != 0) {
      throw std::invalid_argument(
          "macro-elements need an even cell count on every axis, got " +
          std::to_string(mesh.cells[a]) + " on axis " + std::to_string(a));
    }
  }
  MacroElementSet set;
  set.cell_to_macro.assign(mesh.n_cells, -1);
  const int mx = mesh.cells[0] / 2;
  const int my = mesh.cells[1] / 2;
  const int mz = mesh.dim > 2 ? mesh.cells[2] / 2 : 1;
  set.macros.reserve(static_cast<std::size_t>(mx) * my * mz);

  for (int K = 0; K < mz; ++K) {
    for (int J = 0; J < my; ++J) {
      for (int I = 0; I < mx; ++I) {
        MacroElement mac;
        const int kmax = mesh.dim > 2 ? 1 : 0;
        for (int dk = 0; dk <= kmax; ++dk) {
          for (int dj = 0; dj <= 1; ++dj) {
            for (int di = 0; di <= 1; ++di) {
              const int c = mesh.cell_index(2 * I + di, 2 * J + dj, 2 * K + dk);
              set.cell_to_macro[c] = static_cast<int>(set.macros.size());
              mac.cells.push_back(c);
              mac.measure += mesh.cell_volume(c);
            }
          }
        }
        // Internal faces sit on the mid-planes of the block.
        for (int dj = 0; dj <= kmax; ++dj) {
          for (int di = 0; di <= 1; ++di) {
            mac.internal_faces.push_back(
                mesh.face_index(0, 2 * I + 1, 2 * J + di, 2 * K + dj));
            mac.internal_faces.push_back(
                mesh.face_index(1, 2 * I + di, 2 * J + 1, 2 * K + dj));
            if (mesh.dim > 2) {
              mac.internal_faces.push_back(
                  mesh.face_index(2, 2 * I + di, 2 * J + dj, 2 * K + 1));
            }
          }
        }
        set.macros.push_back(std::move(mac));
      }
    }
  }
  return set;
}

}  // namespace poromix
