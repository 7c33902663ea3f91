#ifndef POROMIX_TIMESTEP_HPP
#define POROMIX_TIMESTEP_HPP

#include "poromix/assembly.hpp"
#include "poromix/preconditioner.hpp"

namespace poromix {

/// Discrete fields at one time level. Full-dof vectors carry the Dirichlet
/// values in their fixed slots so history terms need no special casing.
struct State {
  Vec u_full;            // dim * n_nodes
  Vec p;                 // n_cells
  Vec q_full;            // MFE: all faces
  Vec pi_full;           // MHFE: all faces
  std::vector<Vec> w;    // MHFE: per-cell local velocities (2*dim each)
  double t = 0.0;
};

State make_initial_state(const BlockSystem& sys);

/// Cell source functional: returns (chi_k, f(t))_T for cell k at time t.
using CellSourceFn = std::function<double(int, double)>;

inline CellSourceFn zero_source() {
  return [](int, double) { return 0.0; };
}

/// Element-local Darcy velocity from the hybrid solution:
/// w_c = -A_ww^{-1} (A_wp p_c + A_wpi pi|_faces), using the full multiplier
/// vector so boundary values enter directly.
std::vector<Vec> reconstruct_velocity(const BlockSystem& sys, const Vec& p,
                                      const Vec& pi_full);

/// Cell-wise residual of the physical continuity equation (stabilization
/// excluded): zero cell-by-cell for converged unstabilized steps, zero only
/// when summed over each macro-element for stabilized ones.
Vec continuity_residual(const BlockSystem& sys, const State& prev, const State& cur,
                        const CellSourceFn& source);

/// Backward-Euler driver. The system matrix is constant in time, so the
/// preconditioner is factored once at construction.
class TimeStepper {
 public:
  TimeStepper(const BlockSystem& sys, SolveOptions opts);

  Vec build_rhs(const State& prev, const CellSourceFn& source, double t_next) const;

  /// One backward-Euler step; throws std::runtime_error if the Krylov
  /// solver does not converge (the report still carries the history).
  State advance(const State& prev, const CellSourceFn& source, double t_next,
                SolverReport* report = nullptr) const;

  const BlockPreconditioner& preconditioner() const { return prec_; }
  const BlockSystem& system() const { return *sys_; }

 private:
  const BlockSystem* sys_;
  SolveOptions opts_;
  BlockPreconditioner prec_;
};

}  // namespace poromix

#endif
