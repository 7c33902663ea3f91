#include "poromix/bc.hpp"

#include <stdexcept>
#include <string>

namespace poromix {

namespace {
const char* side_name(int s) {
  static const char* names[6] = {"x-", "x+", "y-", "y+", "z-", "z+"};
  return names[s];
}
}  // namespace

void CaseSpec::set_side(int side, SideBc bc) {
  if (side < 0 || side >= 6) throw std::invalid_argument("side index out of range");
  if (sides_[side].has_value()) {
    throw std::invalid_argument(std::string("side ") + side_name(side) +
                                " assigned more than once");
  }
  sides_[side] = std::move(bc);
}

double BoundarySets::pressure_value(const StructuredMesh& mesh, int f, double t) const {
  return sides[face_side[f]].flow_value(mesh.face_center(f), t);
}

double BoundarySets::flux_value(const StructuredMesh& mesh, int f, double t) const {
  return sides[face_side[f]].flow_value(mesh.face_center(f), t);
}

double BoundarySets::disp_value(const StructuredMesh& mesh, int node, int comp,
                                double t) const {
  const int s = node_fixed_side[node][comp];
  return sides[s].disp_value(mesh.node_position(node), t)[comp];
}

std::array<double, 3> BoundarySets::traction_value(const StructuredMesh& mesh, int f,
                                                   double t) const {
  return sides[face_side[f]].traction(mesh.face_center(f), t);
}

BoundarySets tag_boundary(const StructuredMesh& mesh, const CaseSpec& spec) {
  BoundarySets bs;
  bs.dim = mesh.dim;
  for (int s = 0; s < 2 * mesh.dim; ++s) {
    if (!spec.side(s).has_value()) {
      throw std::invalid_argument(std::string("no boundary recipe for side ") +
                                  side_name(s));
    }
    bs.sides[s] = *spec.side(s);
  }

  bs.face_side.assign(mesh.n_faces, -1);
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (mesh.is_boundary_face(f)) bs.face_side[f] = mesh.face_boundary_side(f);
  }

  bs.node_fixed_mask.assign(mesh.n_nodes, 0);
  bs.node_fixed_side.assign(mesh.n_nodes, {-1, -1, -1});
  for (int n = 0; n < mesh.n_nodes; ++n) {
    for (int s : mesh.node_boundary_sides(n)) {
      for (int c = 0; c < mesh.dim; ++c) {
        if (bs.sides[s].fix_disp[c] && !bs.disp_fixed(n, c)) {
          bs.node_fixed_mask[n] |= static_cast<std::uint8_t>(1u << c);
          bs.node_fixed_side[n][c] = static_cast<std::int8_t>(s);
        }
      }
    }
  }
  return bs;
}

}  // namespace poromix
