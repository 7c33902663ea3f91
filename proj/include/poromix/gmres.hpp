#ifndef POROMIX_GMRES_HPP
#define POROMIX_GMRES_HPP

#include "poromix/types.hpp"

#include <functional>
#include <vector>

namespace poromix {

struct SolverReport {
  int n_it = 0;
  bool converged = false;
  std::vector<double> res_history;  // relative residuals, starting at 1
  double t_prec = 0.0;              // preconditioner construction [s]
  double t_solve = 0.0;             // Krylov iterations [s]
  double t_total = 0.0;
};

using LinOp = std::function<void(const Vec&, Vec&)>;

/// Full (non-restarted) right-preconditioned GMRES with modified
/// Gram-Schmidt and zero initial guess. Stops when the 2-norm of the
/// residual drops below tol * ||b||; the returned (possibly partial)
/// solution is M^{-1} applied to the Krylov correction.
Vec gmres(const LinOp& apply_a, const LinOp& apply_m, const Vec& b, double tol,
          int max_it, SolverReport& report);

}  // namespace poromix

#endif
