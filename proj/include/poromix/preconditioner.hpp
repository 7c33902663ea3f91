#ifndef POROMIX_PRECONDITIONER_HPP
#define POROMIX_PRECONDITIONER_HPP

#include "poromix/assembly.hpp"
#include "poromix/factor.hpp"
#include "poromix/gmres.hpp"

namespace poromix {

/// Diagonal first-level Schur surrogate for the condensed system:
/// abar_pp + diag(A_stab) + diag(A_up^T diag(A_uu)^{-1} A_up).
/// Entries are strictly positive for dt > 0.
Vec build_schur_btilde(const BlockSystem& sys);

/// Second-level Schur surrogate A_pipi - dt A_pip Btilde^{-1} A_ppi;
/// symmetric positive definite for any dt >= 0.
SpMat build_schur_ctilde(const BlockSystem& sys, const Vec& btilde);

/// Pressure Schur surrogate for the mixed formulation: A_stab + A_pp
/// + diag(A_up^T diag(A_uu)^{-1} A_up) + dt A_qp^T L^{-1} A_qp with L the
/// lumped (absolute row sum) diagonal of A_qq. Sparsity is that of A_pq A_qp.
SpMat build_schur_ctilde_mixed(const BlockSystem& sys);

/// Fixed-stress diagonal diag(A_up^T diag(A_uu)^{-1} A_up) on the free dofs.
Vec fixed_stress_diag(const SpMat& a_uu, const SpMat& a_up, int n_p);

/// Block triangular preconditioner: upper triangular (A_uu, Btilde_p,
/// Ctilde_pi) for the condensed hybrid system, lower triangular
/// (A_uu, A_qq, Ctilde_p) with the coupling blocks kept for the mixed one.
struct BlockPreconditioner {
  Formulation form = Formulation::Mhfe;
  const BlockSystem* sys = nullptr;

  InnerSolver inv_uu;
  Vec btilde;
  Vec btilde_inv;
  InnerSolver inv_ctilde;  // Ctilde_pi (MHFE) or Ctilde_p (MFE)
  InnerSolver inv_qq;      // MFE only
  double setup_seconds = 0.0;

  void apply(const Vec& r, Vec& z) const;
};

BlockPreconditioner build_preconditioner(const BlockSystem& sys,
                                         InnerKind inner_uu = InnerKind::Direct);

struct SolveOptions {
  double tol = 1e-6;
  int max_it = 1000;
  InnerKind inner_uu = InnerKind::Direct;
};

/// Assembles the preconditioner and runs right-preconditioned GMRES on the
/// free-dof block system.
Vec solve_block_system(const BlockSystem& sys, const BlockPreconditioner& prec,
                       const Vec& rhs, const SolveOptions& opts, SolverReport& report);

}  // namespace poromix

#endif
