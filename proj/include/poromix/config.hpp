#ifndef POROMIX_CONFIG_HPP
#define POROMIX_CONFIG_HPP

#include <string>

namespace poromix {

/// Validated run configuration. File values come from a plain key = value
/// (TOML-syntax) config; command-line flags override file values.
struct RunConfig {
  std::string command;                 // run | convergence | table2 | eigencheck | spe10mini
  std::string case_name = "cantilever";
  int dim = 2;
  int h_inv = 8;
  double dt = 0.1;
  double dt_factor = 1e-6;             // barry-mercer / drained-box time step scale
  int n_steps = 1;
  std::string formulation = "mhfe";    // mfe | mhfe
  bool stabilized = true;
  std::string precond = "direct";      // direct | cg inner displacement solve
  double tol = 1e-6;
  int max_it = 1000;
  std::string out_dir = ".";
  bool dump_matrices = false;
  unsigned long long seed = 42;
  double contrast = 1.0;
  int dense_limit = 3000;
};

/// Parses the key = value file; unknown keys, bad types and duplicate keys
/// are rejected with the offending key named in the message.
RunConfig parse_config_file(const std::string& path);

/// Applies defaults, file values and flag overrides in that order.
/// Flags: --config FILE plus one flag per config key (e.g. --tol, --h-inv).
RunConfig parse_config(int argc, const char* const argv[]);

/// Throws std::invalid_argument naming the first invalid field.
void validate_config(const RunConfig& cfg);

/// Honors POROMIX_NUM_THREADS for the linear algebra backend.
void apply_thread_env();

}  // namespace poromix

#endif
