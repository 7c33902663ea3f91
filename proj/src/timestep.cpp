#include "poromix/timestep.hpp"

#include <stdexcept>

namespace poromix {

namespace {

// Dirichlet values stuffed into full-size vectors (zero elsewhere).
Vec lift_u(const BlockSystem& sys, double t) {
  const StructuredMesh& mesh = *sys.mesh;
  Vec lift = Vec::Zero(sys.raw_n_u);
  for (int n = 0; n < mesh.n_nodes; ++n) {
    for (int c = 0; c < sys.dim; ++c) {
      if (sys.bcs->disp_fixed(n, c)) {
        lift(sys.dim * n + c) = sys.bcs->disp_value(mesh, n, c, t);
      }
    }
  }
  return lift;
}

Vec lift_flux(const BlockSystem& sys, double t) {
  const StructuredMesh& mesh = *sys.mesh;
  Vec lift = Vec::Zero(mesh.n_faces);
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (!sys.flux_map.fixed(f)) continue;
    if (sys.form == Formulation::Mfe) {
      // dof is the velocity along the +axis; qbar is the outward flux.
      const int side = sys.bcs->face_side[f];
      const double s_out = (side % 2 == 0) ? -1.0 : 1.0;
      lift(f) = s_out * sys.bcs->flux_value(mesh, f, t);
    } else {
      lift(f) = sys.bcs->pressure_value(mesh, f, t);
    }
  }
  return lift;
}

Vec traction_load(const BlockSystem& sys, double t) {
  const StructuredMesh& mesh = *sys.mesh;
  const int dim = sys.dim;
  Vec f_u = Vec::Zero(sys.raw_n_u);
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (!mesh.is_boundary_face(f)) continue;
    const auto tr = sys.bcs->traction_value(mesh, f, t);
    if (tr[0] == 0.0 && tr[1] == 0.0 && tr[2] == 0.0) continue;
    const int cell = mesh.face_cells[f][0] >= 0 ? mesh.face_cells[f][0] : mesh.face_cells[f][1];
    int loc = -1;
    for (int l = 0; l < mesh.faces_per_cell(); ++l) {
      if (mesh.cell_faces[cell][l] == f) loc = l;
    }
    const int axis = loc / 2;
    const int bit = loc % 2;
    const double w = face_shape_integral(mesh.cell_extents(cell), dim, axis);
    for (int a = 0; a < mesh.nodes_per_cell(); ++a) {
      if (((a >> axis) & 1) != bit) continue;
      const int node = mesh.cell_nodes[cell][a];
      for (int c = 0; c < dim; ++c) f_u(dim * node + c) += w * tr[c];
    }
  }
  return f_u;
}

// (chi_k, f_tilde_n) with f_tilde_n = b div u_{n-1} + s_eps p_{n-1} + dt f_n.
Vec mass_history(const BlockSystem& sys, const State& prev, const CellSourceFn& source,
                 double t_next) {
  Vec f_p = -(sys.full_up.transpose() * prev.u_full);
  f_p += sys.app_diag.cwiseProduct(prev.p);
  for (int k = 0; k < sys.n_p; ++k) f_p(k) += sys.dt * source(k, t_next);
  return f_p;
}

}  // namespace

State make_initial_state(const BlockSystem& sys) {
  State st;
  st.u_full = Vec::Zero(sys.raw_n_u);
  st.p = Vec::Zero(sys.n_p);
  if (sys.form == Formulation::Mfe) {
    st.q_full = Vec::Zero(sys.mesh->n_faces);
  } else {
    st.pi_full = Vec::Zero(sys.mesh->n_faces);
  }
  st.t = 0.0;
  return st;
}

std::vector<Vec> reconstruct_velocity(const BlockSystem& sys, const Vec& p,
                                      const Vec& pi_full) {
  const StructuredMesh& mesh = *sys.mesh;
  std::vector<Vec> w(mesh.n_cells);
  const int nf = mesh.faces_per_cell();
  Vec pi_loc(nf);
  for (int c = 0; c < mesh.n_cells; ++c) {
    for (int l = 0; l < nf; ++l) pi_loc(l) = pi_full(mesh.cell_faces[c][l]);
    const Vec rhs = sys.elem_wp[c] * p(c) + sys.elem_wpi[c].cwiseProduct(pi_loc);
    w[c] = -sys.elem_ww[c].llt().solve(rhs);
  }
  return w;
}

Vec continuity_residual(const BlockSystem& sys, const State& prev, const State& cur,
                        const CellSourceFn& source) {
  Vec r = -(sys.full_up.transpose() * cur.u_full);
  r += sys.app_diag.cwiseProduct(cur.p);
  if (sys.form == Formulation::Mfe) {
    r -= sys.dt * (sys.full_qp.transpose() * cur.q_full);
  } else {
    r += (sys.abar_diag - sys.app_diag).cwiseProduct(cur.p);
    r += sys.dt * (sys.full_ppi * cur.pi_full);
  }
  r -= mass_history(sys, prev, source, cur.t);
  return r;
}

TimeStepper::TimeStepper(const BlockSystem& sys, SolveOptions opts)
    : sys_(&sys), opts_(opts), prec_(build_preconditioner(sys, opts.inner_uu)) {}

Vec TimeStepper::build_rhs(const State& prev, const CellSourceFn& source,
                           double t_next) const {
  const BlockSystem& sys = *sys_;
  const Vec lu = lift_u(sys, t_next);
  const Vec lf = lift_flux(sys, t_next);

  Vec b(sys.total_dofs());
  const Vec fu_full = traction_load(sys, t_next) - sys.full_uu * lu;
  b.segment(sys.off_u(), sys.n_u()) = gather_free(fu_full, sys.u_map);

  Vec fp = mass_history(sys, prev, source, t_next);
  fp += sys.full_up.transpose() * lu;  // -A_pu * lift_u

  if (sys.form == Formulation::Mfe) {
    // Natural pressure condition enters the velocity equation.
    Vec fq_full = Vec::Zero(sys.mesh->n_faces);
    for (int f = 0; f < sys.mesh->n_faces; ++f) {
      if (sys.bcs->face_on_pressure_boundary(f)) {
        const int side = sys.bcs->face_side[f];
        const double s_out = (side % 2 == 0) ? -1.0 : 1.0;
        fq_full(f) = -s_out * sys.mesh->face_area[f] *
                     sys.bcs->pressure_value(*sys.mesh, f, t_next);
      }
    }
    fq_full -= sys.full_qq * lf;
    b.segment(sys.off_q(), sys.n_flux()) = gather_free(fq_full, sys.flux_map);
    fp += sys.dt * (sys.full_qp.transpose() * lf);  // -dt A_pq * lift_q
    b.segment(sys.off_p(), sys.n_p) = fp;
  } else {
    fp -= sys.dt * (sys.full_ppi * lf);
    b.segment(sys.off_p(), sys.n_p) = fp;

    Vec fpi_full = Vec::Zero(sys.mesh->n_faces);
    for (int f = 0; f < sys.mesh->n_faces; ++f) {
      if (sys.bcs->face_on_flux_boundary(f)) {
        fpi_full(f) = -sys.mesh->face_area[f] * sys.bcs->flux_value(*sys.mesh, f, t_next);
      }
    }
    fpi_full -= sys.full_pipi * lf;
    b.segment(sys.off_pi(), sys.n_flux()) = gather_free(fpi_full, sys.flux_map);
  }
  return b;
}

State TimeStepper::advance(const State& prev, const CellSourceFn& source, double t_next,
                           SolverReport* report) const {
  const BlockSystem& sys = *sys_;
  const Vec b = build_rhs(prev, source, t_next);
  SolverReport local;
  const Vec x = solve_block_system(sys, prec_, b, opts_, local);
  if (report) *report = local;
  if (!local.converged) {
    throw std::runtime_error("GMRES did not converge within the iteration limit");
  }

  State next;
  next.t = t_next;
  next.u_full = lift_u(sys, t_next);
  scatter_free(x.segment(sys.off_u(), sys.n_u()), sys.u_map, next.u_full);
  next.p = x.segment(sys.off_p(), sys.n_p);
  if (sys.form == Formulation::Mfe) {
    next.q_full = lift_flux(sys, t_next);
    scatter_free(x.segment(sys.off_q(), sys.n_flux()), sys.flux_map, next.q_full);
  } else {
    next.pi_full = lift_flux(sys, t_next);
    scatter_free(x.segment(sys.off_pi(), sys.n_flux()), sys.flux_map, next.pi_full);
    next.w = reconstruct_velocity(sys, next.p, next.pi_full);
  }
  return next;
}

}  // namespace poromix
