#include "poromix/assembly.hpp"

#include <stdexcept>

namespace poromix {

SpMat assemble_stab(const StructuredMesh& mesh, const MacroElementSet& macros,
                    const std::vector<CellMaterial>& materials) {
  std::vector<Triplet> trips;
  for (const MacroElement& mac : macros.macros) {
    const double beta = stabilization_beta_mean(materials, mac.cells, mesh.dim);
    const double w = beta * mac.measure;
    for (int f : mac.internal_faces) {
      const int k = mesh.face_cells[f][0];
      const int l = mesh.face_cells[f][1];
      trips.emplace_back(k, k, w);
      trips.emplace_back(l, l, w);
      trips.emplace_back(k, l, -w);
      trips.emplace_back(l, k, -w);
    }
  }
  SpMat a(mesh.n_cells, mesh.n_cells);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

BlockSystem assemble(const StructuredMesh& mesh, const std::vector<CellMaterial>& materials,
                     const BoundarySets& bcs, double dt, Formulation form, bool stabilized,
                     const MacroElementSet* macros) {
  if (materials.size() != static_cast<std::size_t>(mesh.n_cells)) {
    throw std::invalid_argument("one material per cell required");
  }
  if (stabilized && macros == nullptr) {
    throw std::invalid_argument("stabilized assembly requires a macro-element partition");
  }
  if (dt < 0.0) throw std::invalid_argument("time step must be >= 0");

  BlockSystem sys;
  sys.form = form;
  sys.dim = mesh.dim;
  sys.dt = dt;
  sys.stabilized = stabilized;
  sys.mesh = &mesh;
  sys.bcs = &bcs;
  sys.macros = macros;
  sys.materials = &materials;
  sys.n_p = mesh.n_cells;
  sys.raw_n_u = mesh.dim * mesh.n_nodes;
  sys.raw_n_flux = mesh.n_faces;
  sys.raw_n_p = mesh.n_cells;

  const int dim = mesh.dim;
  const int n_udof = sys.raw_n_u;
  const bool hybrid = form == Formulation::Mhfe;

  std::vector<Triplet> t_uu, t_up, t_qq, t_qp, t_ppi, t_pipi;
  sys.app_diag = Vec::Zero(mesh.n_cells);
  sys.abar_diag = Vec::Zero(mesh.n_cells);
  if (hybrid) {
    sys.elem_ww.resize(mesh.n_cells);
    sys.elem_wp.resize(mesh.n_cells);
    sys.elem_wpi.resize(mesh.n_cells);
  }

  for (int c = 0; c < mesh.n_cells; ++c) {
    const ElementMatrices em = elem_matrices(mesh.cell_extents(c), dim, materials[c]);
    const auto& cn = mesh.cell_nodes[c];
    const auto& cf = mesh.cell_faces[c];
    const int nn = mesh.nodes_per_cell();
    const int nf = mesh.faces_per_cell();

    for (int a = 0; a < nn; ++a) {
      for (int ca = 0; ca < dim; ++ca) {
        const int gi = dim * cn[a] + ca;
        t_up.emplace_back(gi, c, em.a_up(dim * a + ca));
        for (int b = 0; b < nn; ++b) {
          for (int cb = 0; cb < dim; ++cb) {
            t_uu.emplace_back(gi, dim * cn[b] + cb, em.a_uu(dim * a + ca, dim * b + cb));
          }
        }
      }
    }
    sys.app_diag(c) = em.a_pp;

    if (!hybrid) {
      for (int i = 0; i < nf; ++i) {
        const double si = StructuredMesh::outward_sign(i);
        t_qp.emplace_back(cf[i], c, si * em.a_wp(i));
        for (int j = 0; j < nf; ++j) {
          const double sj = StructuredMesh::outward_sign(j);
          t_qq.emplace_back(cf[i], cf[j], si * sj * em.a_ww(i, j));
        }
      }
    } else {
      const CondensedElement ce = elem_condense(em, dt);
      sys.abar_diag(c) = ce.abar_pp;
      for (int i = 0; i < nf; ++i) {
        t_ppi.emplace_back(c, cf[i], ce.a_ppi(i));
        for (int j = 0; j < nf; ++j) t_pipi.emplace_back(cf[i], cf[j], ce.a_pipi(i, j));
      }
      sys.elem_ww[c] = em.a_ww;
      sys.elem_wp[c] = em.a_wp;
      sys.elem_wpi[c] = em.a_wpi;
    }
  }

  sys.full_uu.resize(n_udof, n_udof);
  sys.full_uu.setFromTriplets(t_uu.begin(), t_uu.end());
  sys.full_up.resize(n_udof, mesh.n_cells);
  sys.full_up.setFromTriplets(t_up.begin(), t_up.end());
  if (!hybrid) {
    sys.full_qq.resize(mesh.n_faces, mesh.n_faces);
    sys.full_qq.setFromTriplets(t_qq.begin(), t_qq.end());
    sys.full_qp.resize(mesh.n_faces, mesh.n_cells);
    sys.full_qp.setFromTriplets(t_qp.begin(), t_qp.end());
  } else {
    sys.full_ppi.resize(mesh.n_cells, mesh.n_faces);
    sys.full_ppi.setFromTriplets(t_ppi.begin(), t_ppi.end());
    sys.full_pipi.resize(mesh.n_faces, mesh.n_faces);
    sys.full_pipi.setFromTriplets(t_pipi.begin(), t_pipi.end());
  }

  if (stabilized) {
    sys.a_stab = assemble_stab(mesh, *macros, materials);
  } else {
    sys.a_stab.resize(mesh.n_cells, mesh.n_cells);
  }

  // Dirichlet partitions: displacement components on Gamma_u, normal
  // velocities on Gamma_q (MFE), interface pressures on Gamma_p (MHFE).
  std::vector<bool> u_fixed(n_udof, false);
  for (int n = 0; n < mesh.n_nodes; ++n) {
    for (int c2 = 0; c2 < dim; ++c2) {
      if (bcs.disp_fixed(n, c2)) u_fixed[dim * n + c2] = true;
    }
  }
  sys.u_map = make_dof_map(u_fixed);

  std::vector<bool> flux_fixed(mesh.n_faces, false);
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (!hybrid && bcs.face_on_flux_boundary(f)) flux_fixed[f] = true;
    if (hybrid && bcs.face_on_pressure_boundary(f)) flux_fixed[f] = true;
  }
  sys.flux_map = make_dof_map(flux_fixed);

  sys.a_uu = restrict_block(sys.full_uu, sys.u_map, sys.u_map);
  sys.a_up = restrict_rows(sys.full_up, sys.u_map);
  sys.a_pu = SpMat((-sys.a_up).transpose());
  if (!hybrid) {
    sys.a_qq = restrict_block(sys.full_qq, sys.flux_map, sys.flux_map);
    sys.a_qp = restrict_rows(sys.full_qp, sys.flux_map);
    sys.a_pq = SpMat((-sys.a_qp).transpose());
  } else {
    sys.a_ppi = restrict_cols(sys.full_ppi, sys.flux_map);
    sys.a_pip = SpMat(sys.a_ppi.transpose());
    sys.a_pipi = restrict_block(sys.full_pipi, sys.flux_map, sys.flux_map);
  }
  return sys;
}

void BlockSystem::apply(const Vec& x, Vec& y) const {
  y.resize(total_dofs());
  const auto xu = x.segment(off_u(), n_u());
  const auto xp = x.segment(off_p(), n_p);
  const Vec& p_diag = form == Formulation::Mfe ? app_diag : abar_diag;
  Vec yp = a_pu * xu + p_diag.cwiseProduct(xp);
  if (stabilized) yp += a_stab * xp;
  y.segment(off_u(), n_u()) = a_uu * xu + a_up * xp;
  if (form == Formulation::Mfe) {
    const auto xq = x.segment(off_q(), n_flux());
    y.segment(off_q(), n_flux()) = a_qq * xq + a_qp * xp;
    y.segment(off_p(), n_p) = yp + dt * (a_pq * xq);
  } else {
    const auto xpi = x.segment(off_pi(), n_flux());
    y.segment(off_p(), n_p) = yp + dt * (a_ppi * xpi);
    y.segment(off_pi(), n_flux()) = a_pip * xp + a_pipi * xpi;
  }
}

}  // namespace poromix
