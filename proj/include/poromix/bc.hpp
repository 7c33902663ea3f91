#ifndef POROMIX_BC_HPP
#define POROMIX_BC_HPP

#include "poromix/mesh.hpp"
#include "poromix/types.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace poromix {

/// Flow condition on a domain side: prescribed pressure (Dirichlet for the
/// flow problem) or prescribed outward normal flux.
enum class FlowBc { Pressure, Flux };

enum Side : int { XMin = 0, XMax = 1, YMin = 2, YMax = 3, ZMin = 4, ZMax = 5 };

/// Recipe for one domain side. Displacement components are fixed
/// per-component so tangential-only constraints are expressible; traction
/// acts on the remaining (natural) components.
struct SideBc {
  FlowBc flow = FlowBc::Flux;
  ScalarFn flow_value = constant_scalar(0.0);   // pbar or qbar (outward flux)
  std::array<bool, 3> fix_disp = {false, false, false};
  VectorFn disp_value = zero_vector();
  VectorFn traction = zero_vector();
};

/// Per-side boundary recipe for a box domain. Every side of the domain must
/// be assigned exactly once before tagging.
class CaseSpec {
 public:
  void set_side(int side, SideBc bc);
  const std::optional<SideBc>& side(int s) const { return sides_[s]; }

 private:
  std::array<std::optional<SideBc>, 6> sides_;
};

/// Resolved boundary data: complementary flow decomposition per boundary
/// face and per-node per-component displacement constraints.
struct BoundarySets {
  int dim = 0;
  std::array<SideBc, 6> sides;
  std::vector<int> face_side;                      // -1 for interior faces
  std::vector<std::uint8_t> node_fixed_mask;       // bit c = component c fixed
  std::vector<std::array<std::int8_t, 3>> node_fixed_side;

  bool face_on_pressure_boundary(int f) const {
    return face_side[f] >= 0 && sides[face_side[f]].flow == FlowBc::Pressure;
  }
  bool face_on_flux_boundary(int f) const {
    return face_side[f] >= 0 && sides[face_side[f]].flow == FlowBc::Flux;
  }
  bool disp_fixed(int node, int comp) const {
    return node_fixed_mask[node] & (1u << comp);
  }

  double pressure_value(const StructuredMesh& mesh, int f, double t) const;
  double flux_value(const StructuredMesh& mesh, int f, double t) const;
  double disp_value(const StructuredMesh& mesh, int node, int comp, double t) const;
  std::array<double, 3> traction_value(const StructuredMesh& mesh, int f, double t) const;
};

/// Resolves a per-side recipe against the mesh. Throws if any side of the
/// domain is missing from the spec.
BoundarySets tag_boundary(const StructuredMesh& mesh, const CaseSpec& spec);

}  // namespace poromix

#endif
