#include "poromix/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poromix {

void write_vtk(const StructuredMesh& mesh, const State& state, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  const int dim = mesh.dim;
  const int nx = mesh.cells[0] + 1;
  const int ny = mesh.cells[1] + 1;
  const int nz = dim > 2 ? mesh.cells[2] + 1 : 1;

  std::fprintf(fp, "# vtk DataFile Version 3.0\n");
  std::fprintf(fp, "poromix fields\n");
  std::fprintf(fp, "ASCII\n");
  std::fprintf(fp, "DATASET STRUCTURED_GRID\n");
  std::fprintf(fp, "DIMENSIONS %d %d %d\n", nx, ny, nz);
  std::fprintf(fp, "POINTS %d double\n", mesh.n_nodes);
  for (int n = 0; n < mesh.n_nodes; ++n) {
    const Point x = mesh.node_position(n);
    std::fprintf(fp, "%.16e %.16e %.16e\n", x[0], x[1], x[2]);
  }

  std::fprintf(fp, "CELL_DATA %d\n", mesh.n_cells);
  std::fprintf(fp, "SCALARS pressure double 1\n");
  std::fprintf(fp, "LOOKUP_TABLE default\n");
  for (int c = 0; c < mesh.n_cells; ++c) std::fprintf(fp, "%.16e\n", state.p(c));

  std::fprintf(fp, "POINT_DATA %d\n", mesh.n_nodes);
  std::fprintf(fp, "VECTORS displacement double\n");
  for (int n = 0; n < mesh.n_nodes; ++n) {
    const double ux = state.u_full(dim * n);
    const double uy = state.u_full(dim * n + 1);
    const double uz = dim > 2 ? state.u_full(dim * n + 2) : 0.0;
    std::fprintf(fp, "%.16e %.16e %.16e\n", ux, uy, uz);
  }
  std::fclose(fp);
}

VtkFields read_vtk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  VtkFields out;
  std::string line;
  int n_points = 0, n_cells = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "POINTS") {
      ss >> n_points;
      out.points.resize(n_points);
      for (auto& p : out.points) in >> p[0] >> p[1] >> p[2];
    } else if (tok == "CELL_DATA") {
      ss >> n_cells;
    } else if (tok == "SCALARS") {
      std::getline(in, line);  // LOOKUP_TABLE
      out.pressure.resize(n_cells);
      for (auto& v : out.pressure) in >> v;
    } else if (tok == "VECTORS") {
      out.displacement.resize(n_points);
      for (auto& u : out.displacement) in >> u[0] >> u[1] >> u[2];
    }
  }
  if (out.points.empty() || out.pressure.empty()) {
    throw std::runtime_error("not a poromix VTK file: " + path);
  }
  return out;
}

}  // namespace poromix
