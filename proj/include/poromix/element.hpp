#ifndef POROMIX_ELEMENT_HPP
#define POROMIX_ELEMENT_HPP

#include "poromix/material.hpp"
#include "poromix/types.hpp"

namespace poromix {

/// Elemental matrices on one axis-aligned cell.
///
/// Local conventions, used by the assembler and fixed here once:
///  - nodes ordered lexicographically, first axis fastest;
///  - displacement dofs node-major with interleaved components
///    (dof = dim*node + comp);
///  - faces ordered [x-, x+, y-, y+, z-, z+];
///  - the RT0 basis is normalized to unit outward normal velocity on its own
///    face (phi_i . n_e = delta_ie), which gives a_wpi = diag(|e|) and
///    a_wp[i] = -|e_i| exactly.
struct ElementMatrices {
  Mat a_uu;       // (dim*2^dim)^2, symmetric PSD, rigid translations in kernel
  Vec a_up;       // coupling column, -(div eta_i, b)_T
  Mat a_ww;       // 2dim x 2dim, SPD, block-diagonal by axis pair
  Vec a_wp;       // -(div phi_i, 1)_T = -|e_i|
  Vec a_wpi;      // diagonal of (phi_i . n_e, zeta_j)_dT = |e_i|
  double a_pp;    // s_eps * |T|
  int dim;
};

/// Condensed pressure/multiplier blocks after element-local elimination of
/// the velocity unknowns.
struct CondensedElement {
  double abar_pp;              // a_pp + dt * a_wp^T a_ww^{-1} a_wp
  Eigen::RowVectorXd a_ppi;    // 1 x 2dim
  Mat a_pipi;                  // 2dim x 2dim, symmetric positive definite
};

ElementMatrices elem_matrices(const std::array<double, 3>& extents, int dim,
                              const CellMaterial& mat);

CondensedElement elem_condense(const ElementMatrices& em, double dt);

/// Integral of each Q1 shape function over one face of the cell, needed for
/// traction loads: |e| / 2^(dim-1) for the nodes on the face.
double face_shape_integral(const std::array<double, 3>& extents, int dim, int axis);

}  // namespace poromix

#endif
