#ifndef POROMIX_STUDIES_HPP
#define POROMIX_STUDIES_HPP

#include "poromix/bench.hpp"
#include "poromix/config.hpp"

namespace poromix {

/// Executes the configured command, writing CSV (and VTK) outputs into
/// cfg.out_dir. Returns the process exit code: 0 iff every requested check
/// passed and every solve converged.
int run_study(const RunConfig& cfg);

/// Case lookup shared by the run/table2/spe10mini commands.
CaseDefinition case_from_config(const RunConfig& cfg);

struct ConvergenceRow {
  std::string formulation;
  double h = 0.0;
  double error = 0.0;
  double slope = 0.0;
};

/// Barry-Mercer self-convergence study: levels 1/8..1/`finest` against a
/// reference at 2x the finest level, shared time step, reference time step
/// halved until the error metric moves by less than 1%.
std::vector<ConvergenceRow> barry_mercer_convergence(int finest, double tol,
                                                     int initial_steps = 64);

}  // namespace poromix

#endif
