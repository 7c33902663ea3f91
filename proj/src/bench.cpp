#include "poromix/bench.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poromix {

BuiltCase build_case(const CaseDefinition& def) {
  BuiltCase bc;
  bc.def = &def;
  bc.mesh = build_structured_mesh(def.dim, def.cells, def.lengths);
  bool even = true;
  for (int a = 0; a < def.dim; ++a) even = even && def.cells[a] % 2 == 0;
  if (even) {
    bc.macros = build_macro_elements(bc.mesh);
    bc.has_macros = true;
  }
  if (def.material_field) {
    bc.materials = def.material_field(bc.mesh);
  } else {
    bc.materials.assign(bc.mesh.n_cells, def.base_material);
  }
  bc.bcs = tag_boundary(bc.mesh, def.spec);
  bc.source = def.source_builder ? def.source_builder(bc.mesh) : zero_source();
  return bc;
}

double barry_mercer_load_frequency(const CellMaterial& m) {
  return (lame_lambda(m) + 2.0 * shear_modulus(m)) * m.kappa[0] / m.mu;
}

namespace {

SideBc drained_tangential_side(int axis, int dim) {
  SideBc bc;
  bc.flow = FlowBc::Pressure;
  bc.flow_value = constant_scalar(0.0);
  for (int c = 0; c < dim; ++c) bc.fix_disp[c] = (c != axis);
  return bc;
}

CellMaterial barry_mercer_material() {
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.1;
  m.b = 1.0;
  m.s_eps = 0.0;
  m.kappa = {1e-9, 1e-9, 1e-9};
  m.mu = 1e-3;
  return m;
}

}  // namespace

CaseDefinition barry_mercer_case(int n, double dt_factor) {
  if (n < 4) throw std::invalid_argument("barry-mercer needs n >= 4");
  CaseDefinition def;
  def.name = "barry-mercer";
  def.dim = 2;
  def.cells = {n, n, 1};
  def.lengths = {1.0, 1.0, 1.0};
  def.base_material = barry_mercer_material();

  for (int s = 0; s < 4; ++s) def.spec.set_side(s, drained_tangential_side(s / 2, 2));

  const double beta_hat = barry_mercer_load_frequency(def.base_material);
  const double period = std::numbers::pi / (2.0 * beta_hat);
  def.dt = dt_factor * period;
  def.t_end = period;

  def.source_builder = [beta_hat](const StructuredMesh& mesh) -> CellSourceFn {
    const int k0 = mesh.locate_cell({0.25, 0.25, 0.0});
    return [k0, beta_hat](int k, double t) {
      return k == k0 ? 2.0 * beta_hat * std::sin(beta_hat * t) : 0.0;
    };
  };
  return def;
}

CaseDefinition cantilever_case(int dim, int n, double dt) {
  if (n < 2 || (dim != 2 && dim != 3)) {
    throw std::invalid_argument("cantilever needs n >= 2 and dim in {2,3}");
  }
  CaseDefinition def;
  def.name = "cantilever";
  def.dim = dim;
  def.cells = {n, n, dim > 2 ? n : 1};
  def.lengths = {1.0, 1.0, 1.0};
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.4;
  m.b = 1.0;
  m.s_eps = 0.0;
  m.kappa = {1e-7, 1e-7, 1e-7};
  m.mu = 1e-3;
  def.base_material = m;

  SideBc clamped;
  clamped.flow = FlowBc::Flux;
  for (int c = 0; c < dim; ++c) clamped.fix_disp[c] = true;

  SideBc free_side;
  free_side.flow = FlowBc::Flux;

  SideBc top = free_side;
  top.traction = constant_vector(0.0, dim == 2 ? -1.0 : 0.0, dim == 3 ? -1.0 : 0.0);

  def.spec.set_side(XMin, clamped);
  def.spec.set_side(XMax, free_side);
  if (dim == 2) {
    def.spec.set_side(YMin, free_side);
    def.spec.set_side(YMax, top);
  } else {
    def.spec.set_side(YMin, free_side);
    def.spec.set_side(YMax, free_side);
    def.spec.set_side(ZMin, free_side);
    def.spec.set_side(ZMax, top);
  }
  def.dt = dt;
  def.t_end = dt;
  return def;
}

CaseDefinition drained_box_case(int dim, int n, double dt_factor) {
  CaseDefinition def;
  def.name = "drained-box";
  def.dim = dim;
  def.cells = {n, n, dim > 2 ? n : 1};
  def.lengths = {1.0, 1.0, 1.0};
  def.base_material = barry_mercer_material();
  for (int s = 0; s < 2 * dim; ++s) def.spec.set_side(s, drained_tangential_side(s / 2, dim));

  const double beta_hat = barry_mercer_load_frequency(def.base_material);
  const double period = std::numbers::pi / (2.0 * beta_hat);
  def.dt = dt_factor * period;
  def.t_end = period;
  def.source_builder = [beta_hat, dim](const StructuredMesh& mesh) -> CellSourceFn {
    const int k0 = mesh.locate_cell({0.25, 0.25, dim > 2 ? 0.25 : 0.0});
    return [k0, beta_hat](int k, double t) {
      return k == k0 ? 2.0 * beta_hat * std::sin(beta_hat * t) : 0.0;
    };
  };
  return def;
}

CaseDefinition heterogeneous_case(unsigned long long seed, double contrast, int n) {
  if (!(contrast >= 1.0)) throw std::invalid_argument("contrast must be >= 1");
  CaseDefinition def;
  def.name = "spe10mini";
  def.dim = 3;
  def.cells = {n, n, n};
  def.lengths = {365.0, 670.0, 628.0};
  CellMaterial m;
  m.E = 5e9;
  m.nu = 0.25;
  m.b = 1.0;
  m.s_eps = 0.0;
  m.kappa = {1e-13, 1e-13, 1e-13};
  m.mu = 3e-3;
  def.base_material = m;

  const double decades = std::log10(contrast);
  def.material_field = [m, seed, decades, n](const StructuredMesh& mesh) {
    std::vector<CellMaterial> mats(mesh.n_cells, m);
    // xorshift-based generator: fully specified, identical on every platform
    unsigned long long s = seed ? seed : 0x9e3779b97f4a7c15ull;
    auto next_unit = [&s]() {
      s ^= s << 13;
      s ^= s >> 7;
      s ^= s << 17;
      return static_cast<double>(s >> 11) * 0x1.0p-53;
    };
    const int burden = n / 4;  // tight layers top and bottom
    for (int c = 0; c < mesh.n_cells; ++c) {
      const int k = mesh.cell_multi_index(c)[2];
      double kap;
      if (k < burden || k >= n - burden) {
        kap = 1e-17;
        next_unit();  // keep the reservoir draw sequence independent of layering
      } else {
        kap = 1e-13 * std::pow(10.0, -decades * next_unit());
      }
      mats[c].kappa = {kap, kap, kap};
    }
    return mats;
  };

  SideBc noflow_roller_x;  // fixes the normal displacement component
  noflow_roller_x.fix_disp[0] = true;
  SideBc noflow_roller_y;
  noflow_roller_y.fix_disp[1] = true;
  SideBc bottom;
  bottom.fix_disp = {true, true, true};
  SideBc top;  // free surface, no flow

  def.spec.set_side(XMin, noflow_roller_x);
  def.spec.set_side(XMax, noflow_roller_x);
  def.spec.set_side(YMin, noflow_roller_y);
  def.spec.set_side(YMax, noflow_roller_y);
  def.spec.set_side(ZMin, bottom);
  def.spec.set_side(ZMax, top);

  const int burden = n / 4;
  def.source_builder = [n, burden](const StructuredMesh& mesh) -> CellSourceFn {
    // Injector and producer columns through the reservoir interval at
    // opposite corners, constant total rate split over the column.
    std::vector<double> rate(mesh.n_cells, 0.0);
    const int col = n - burden - burden;
    for (int k = burden; k < n - burden; ++k) {
      rate[mesh.cell_index(0, 0, k)] = 1e-3 / col;
      rate[mesh.cell_index(n - 1, n - 1, k)] = -1e-3 / col;
    }
    return [rate](int k, double) { return rate[k]; };
  };

  def.dt = 8640.0;  // 0.1 day
  def.t_end = def.dt;
  return def;
}

double l2_pressure_error(const StructuredMesh& coarse, const Vec& p_coarse,
                         const StructuredMesh& fine, const Vec& p_fine) {
  std::array<int, 3> ratio = {1, 1, 1};
  for (int a = 0; a < coarse.dim; ++a) {
    if (fine.cells[a] % coarse.cells[a] != 0) {
      throw std::invalid_argument("fine mesh must be an integer refinement");
    }
    ratio[a] = fine.cells[a] / coarse.cells[a];
  }
  double num = 0.0, den = 0.0;
  for (int c = 0; c < coarse.n_cells; ++c) {
    const auto ci = coarse.cell_multi_index(c);
    double avg = 0.0, vol = 0.0;
    const int rz = coarse.dim > 2 ? ratio[2] : 1;
    for (int dk = 0; dk < rz; ++dk) {
      for (int dj = 0; dj < ratio[1]; ++dj) {
        for (int di = 0; di < ratio[0]; ++di) {
          const int fcell = fine.cell_index(ci[0] * ratio[0] + di, ci[1] * ratio[1] + dj,
                                            ci[2] * rz + dk);
          const double v = fine.cell_volume(fcell);
          avg += v * p_fine(fcell);
          vol += v;
        }
      }
    }
    avg /= vol;
    const double vc = coarse.cell_volume(c);
    num += vc * (avg - p_coarse(c)) * (avg - p_coarse(c));
    den += vc * avg * avg;
  }
  if (den == 0.0) throw std::invalid_argument("reference pressure field is zero");
  return std::sqrt(num / den);
}

double oscillation_index(const StructuredMesh& mesh, const Vec& p) {
  double num = 0.0, den = 0.0;
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (mesh.is_boundary_face(f)) continue;
    const double jump = p(mesh.face_cells[f][1]) - p(mesh.face_cells[f][0]);
    num += std::abs(jump) * mesh.face_area[f];
  }
  const double ex = (mesh.dim - 1.0) / mesh.dim;
  for (int c = 0; c < mesh.n_cells; ++c) {
    den += std::abs(p(c)) * std::pow(mesh.cell_volume(c), ex);
  }
  return den == 0.0 ? 0.0 : num / den;
}

double convergence_slope(const std::vector<double>& hs, const std::vector<double>& errors) {
  if (hs.size() != errors.size() || hs.size() < 3) {
    throw std::invalid_argument("need at least 3 (h, error) points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(hs.size());
  for (int i = 0; i < n; ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("errors must be positive");
    const double x = std::log(hs[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TransientResult run_transient(const BuiltCase& bc, Formulation form, bool stabilized,
                              double dt, int n_steps, const SolveOptions& opts) {
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, dt, form, stabilized,
               bc.has_macros ? &bc.macros : nullptr);
  const TimeStepper stepper(sys, opts);
  TransientResult res;
  res.state = make_initial_state(sys);
  for (int s = 1; s <= n_steps; ++s) {
    SolverReport rep;
    res.state = stepper.advance(res.state, bc.source, s * dt, &rep);
    res.total_iterations += rep.n_it;
    res.max_iterations = std::max(res.max_iterations, rep.n_it);
    res.last_report = rep;
  }
  res.steps = n_steps;
  return res;
}

}  // namespace poromix
