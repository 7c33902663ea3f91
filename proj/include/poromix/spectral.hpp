#ifndef POROMIX_SPECTRAL_HPP
#define POROMIX_SPECTRAL_HPP

#include "poromix/assembly.hpp"

#include <complex>

namespace poromix {

/// Eigenvalues (ascending) of the local Schur complement
/// B_p^M = A_stab^M + A_up^T A_uu^{-1} A_up on one macro-element with the
/// displacements clamped on its outer boundary.
Vec macro_schur_eigenvalues(const StructuredMesh& mesh, const MacroElement& macro,
                            const CellMaterial& material, double beta);

/// Densified free-dof system matrix (including stabilization).
Mat dense_system_matrix(const BlockSystem& sys);

/// Exact first-level Schur complement abar_pp + A_stab + A_up^T A_uu^{-1} A_up
/// of the condensed hybrid system, dense.
Mat dense_bp(const BlockSystem& sys);

/// Limit of the second-level Schur surrogate for dt -> infinity; a positive
/// definite lower bound for Ctilde at every dt. Requires dt > 0 in `sys` to
/// extract the condensation diagonal.
Mat dense_ctilde_infinity(const BlockSystem& sys);

struct SpectralReport {
  int n_unit = 0;      // eigenvalues of T within 1e-8 of 1
  int n_expected = 0;  // n_u + n_pi - n_p
  bool unit_multiplicity_ok = false;
  std::vector<std::complex<double>> t_eigenvalues;
  std::vector<std::complex<double>> z_eigenvalues;
  double eps = 0.0;            // ||E_p||_2 / 2
  double gamma = 0.0;          // ||A_ppi Ctilde^{-1} A_pip Btilde^{-1}||_2
  double bound = 0.0;          // eps + sqrt(eps^2 + 2 dt gamma eps)
  double max_t_deviation = 0.0;  // max |lambda - 1| over eig(T)
  double max_violation = 0.0;  // max(|mu_i| - bound), <= 0 when the lemma holds
};

/// Dense verification of the preconditioned-operator spectrum for the hybrid
/// system: multiplicity of the unit eigenvalue, the eigenvalues of Z, and the
/// bound eps + sqrt(eps^2 + 2 dt gamma eps). `bp_tilde` is the first-level
/// surrogate as a dense matrix (diagonal or the exact dense_bp); Ctilde is
/// derived from it. Throws std::invalid_argument beyond `dense_limit` dofs.
SpectralReport spectral_diagnostics(const BlockSystem& sys, const Mat& bp_tilde,
                                    int dense_limit = 3000);

/// Convenience overload using the production diagonal surrogate.
SpectralReport spectral_diagnostics(const BlockSystem& sys, int dense_limit = 3000);

}  // namespace poromix

#endif
