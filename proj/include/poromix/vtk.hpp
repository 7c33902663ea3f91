#ifndef POROMIX_VTK_HPP
#define POROMIX_VTK_HPP

#include "poromix/mesh.hpp"
#include "poromix/timestep.hpp"

#include <string>

namespace poromix {

/// Legacy ASCII VTK structured grid: cell scalar "pressure" and point vector
/// "displacement". Byte-stable for identical inputs.
void write_vtk(const StructuredMesh& mesh, const State& state, const std::string& path);

struct VtkFields {
  std::vector<std::array<double, 3>> points;
  std::vector<double> pressure;
  std::vector<std::array<double, 3>> displacement;
};

/// Re-parses a file produced by write_vtk (used by round-trip checks).
VtkFields read_vtk(const std::string& path);

}  // namespace poromix

#endif
