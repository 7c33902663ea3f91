#ifndef POROMIX_BENCH_HPP
#define POROMIX_BENCH_HPP

#include "poromix/timestep.hpp"

#include <string>

namespace poromix {

/// Deterministic recipe for a benchmark run; build_case realizes it on a
/// concrete mesh.
struct CaseDefinition {
  std::string name;
  int dim = 2;
  std::array<int, 3> cells = {1, 1, 1};
  std::array<double, 3> lengths = {1.0, 1.0, 1.0};
  CellMaterial base_material;
  std::function<std::vector<CellMaterial>(const StructuredMesh&)> material_field;
  CaseSpec spec;
  std::function<CellSourceFn(const StructuredMesh&)> source_builder;
  double dt = 0.0;
  double t_end = 0.0;
};

struct BuiltCase {
  StructuredMesh mesh;
  MacroElementSet macros;
  bool has_macros = false;
  std::vector<CellMaterial> materials;
  BoundarySets bcs;
  CellSourceFn source;
  const CaseDefinition* def = nullptr;
};

BuiltCase build_case(const CaseDefinition& def);

/// Load frequency (lambda + 2G) kappa / mu of the periodic point source.
double barry_mercer_load_frequency(const CellMaterial& m);

/// Point-source sine-wave problem on the unit square: zero pressure and
/// tangential displacement constraints on all sides, source at (l/4, l/4).
/// dt = dt_factor * pi/(2 beta_hat); dt_factor = 1e-6 is the undrained
/// regime, t_end corresponds to normalized time pi/2.
CaseDefinition barry_mercer_case(int n, double dt_factor);

/// Impermeable cantilever: no-flow everywhere, clamped on x-, unit downward
/// traction on the top side.
CaseDefinition cantilever_case(int dim, int n, double dt);

/// All-sides drained box with tangential constraints; the 3D analogue of the
/// point-source problem, used by the spectral diagnostics studies.
CaseDefinition drained_box_case(int dim, int n, double dt_factor);

/// Layered 3D reservoir with log-uniform cell permeability spanning
/// log10(contrast) decades (contrast = 1 is homogeneous), tight over- and
/// underburden, and corner injector/producer columns.
CaseDefinition heterogeneous_case(unsigned long long seed, double contrast, int n = 8);

/// Relative cell-wise L2 pressure error against a solution on an
/// integer-refined mesh, averaged onto the coarse cells.
double l2_pressure_error(const StructuredMesh& coarse, const Vec& p_coarse,
                         const StructuredMesh& fine, const Vec& p_fine);

/// Interface-jump oscillation measure: sum over interior faces of
/// |[[p]]| |e| normalized by sum over cells of |p| |T|^((d-1)/d).
double oscillation_index(const StructuredMesh& mesh, const Vec& p);

/// Least-squares slope of log(error) against log(h); needs >= 3 points and
/// positive errors.
double convergence_slope(const std::vector<double>& hs, const std::vector<double>& errors);

struct TransientResult {
  State state;
  int total_iterations = 0;
  int max_iterations = 0;
  int steps = 0;
  SolverReport last_report;
};

/// Runs n_steps of backward Euler with fixed dt from the zero initial state.
TransientResult run_transient(const BuiltCase& bc, Formulation form, bool stabilized,
                              double dt, int n_steps, const SolveOptions& opts);

}  // namespace poromix

#endif
