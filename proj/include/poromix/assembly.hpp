#ifndef POROMIX_ASSEMBLY_HPP
#define POROMIX_ASSEMBLY_HPP

#include "poromix/bc.hpp"
#include "poromix/dof.hpp"
#include "poromix/element.hpp"
#include "poromix/material.hpp"
#include "poromix/mesh.hpp"

namespace poromix {

enum class Formulation { Mfe, Mhfe };

/// Assembled block system on the eliminated (free) dofs, with the full-dof
/// blocks retained for boundary lifting, time-step history terms and
/// conservation checks.
///
/// MFE unknown layout: [u, q, p]; MHFE (condensed): [u, p, pi]. The coupling
/// signs follow the non-symmetric form: a_pu = -a_up^T, a_pq = -a_qp^T, and
/// a_pip = a_ppi^T.
struct BlockSystem {
  Formulation form = Formulation::Mhfe;
  int dim = 0;
  double dt = 0.0;
  bool stabilized = false;

  const StructuredMesh* mesh = nullptr;
  const BoundarySets* bcs = nullptr;
  const MacroElementSet* macros = nullptr;
  const std::vector<CellMaterial>* materials = nullptr;

  FieldDofMap u_map;
  FieldDofMap flux_map;  // q dofs (MFE) or pi dofs (MHFE)
  int n_p = 0;

  // Full-dof blocks.
  SpMat full_uu, full_up;
  SpMat full_qq, full_qp;      // MFE
  SpMat full_ppi, full_pipi;   // MHFE
  Vec app_diag;                // (chi_i, s_eps chi_j): diagonal
  Vec abar_diag;               // MHFE condensed pressure diagonal
  SpMat a_stab;                // zero matrix when not stabilized

  // Free-dof blocks.
  SpMat a_uu, a_up, a_pu;
  SpMat a_qq, a_qp, a_pq;          // MFE
  SpMat a_ppi, a_pip, a_pipi;      // MHFE

  // Per-cell velocity data for MHFE reconstruction.
  std::vector<Mat> elem_ww;
  std::vector<Vec> elem_wp;
  std::vector<Vec> elem_wpi;

  int raw_n_u = 0, raw_n_flux = 0, raw_n_p = 0;

  int n_u() const { return u_map.n_free(); }
  int n_flux() const { return flux_map.n_free(); }
  int total_dofs() const { return n_u() + n_flux() + n_p; }

  // Flat-vector offsets following the block order of each formulation.
  int off_u() const { return 0; }
  int off_q() const { return n_u(); }                      // MFE
  int off_p() const { return form == Formulation::Mfe ? n_u() + n_flux() : n_u(); }
  int off_pi() const { return n_u() + n_p; }               // MHFE

  /// y = A x on the free dofs, including the stabilization term.
  void apply(const Vec& x, Vec& y) const;
};

/// Pressure-jump stabilization matrix: for each macro-element M and internal
/// face between cells (k,l), beta_M |M| enters (k,k) and (l,l) and -beta_M |M|
/// enters (k,l) and (l,k). Symmetric PSD with zero row sums per macro-element.
SpMat assemble_stab(const StructuredMesh& mesh, const MacroElementSet& macros,
                    const std::vector<CellMaterial>& materials);

BlockSystem assemble(const StructuredMesh& mesh, const std::vector<CellMaterial>& materials,
                     const BoundarySets& bcs, double dt, Formulation form, bool stabilized,
                     const MacroElementSet* macros = nullptr);

}  // namespace poromix

#endif
