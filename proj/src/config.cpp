#include "poromix/config.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace poromix {

namespace {

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config key '" + key + "' expects true or false, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) {
    throw std::invalid_argument("config key '" + key + "' expects a number, got '" + v + "'");
  }
  return d;
}

long long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) {
    throw std::invalid_argument("config key '" + key + "' expects an integer, got '" + v + "'");
  }
  return i;
}

std::string parse_string(const std::string& key, const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  if (!v.empty() && v.find_first_of(" \t\"") == std::string::npos) return v;
  throw std::invalid_argument("config key '" + key + "' expects a string, got '" + v + "'");
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  bool have_command = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string val = strip(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw std::invalid_argument("config key '" + key + "' given more than once");
    }

    if (key == "command") {
      cfg.command = parse_string(key, val);
      have_command = true;
    } else if (key == "case") {
      cfg.case_name = parse_string(key, val);
    } else if (key == "dim") {
      cfg.dim = static_cast<int>(parse_int(key, val));
    } else if (key == "h_inv") {
      cfg.h_inv = static_cast<int>(parse_int(key, val));
    } else if (key == "dt") {
      cfg.dt = parse_double(key, val);
    } else if (key == "dt_factor") {
      cfg.dt_factor = parse_double(key, val);
    } else if (key == "n_steps") {
      cfg.n_steps = static_cast<int>(parse_int(key, val));
    } else if (key == "formulation") {
      cfg.formulation = parse_string(key, val);
    } else if (key == "stabilized") {
      cfg.stabilized = parse_bool(key, val);
    } else if (key == "precond") {
      cfg.precond = parse_string(key, val);
    } else if (key == "tol") {
      cfg.tol = parse_double(key, val);
    } else if (key == "max_it") {
      cfg.max_it = static_cast<int>(parse_int(key, val));
    } else if (key == "out") {
      cfg.out_dir = parse_string(key, val);
    } else if (key == "dump_matrices") {
      cfg.dump_matrices = parse_bool(key, val);
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long long>(parse_int(key, val));
    } else if (key == "contrast") {
      cfg.contrast = parse_double(key, val);
    } else if (key == "dense_limit") {
      cfg.dense_limit = static_cast<int>(parse_int(key, val));
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (!have_command) {
    throw std::invalid_argument("missing required config key 'command'");
  }
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  static const std::set<std::string> commands = {"run", "convergence", "table2",
                                                 "eigencheck", "spe10mini"};
  if (!commands.count(cfg.command)) {
    throw std::invalid_argument("invalid value for 'command': " + cfg.command);
  }
  static const std::set<std::string> cases = {"barry-mercer", "cantilever", "drained-box",
                                              "spe10mini"};
  if (!cases.count(cfg.case_name)) {
    throw std::invalid_argument("invalid value for 'case': " + cfg.case_name);
  }
  if (cfg.dim != 2 && cfg.dim != 3) throw std::invalid_argument("invalid value for 'dim'");
  if (cfg.h_inv < 1) throw std::invalid_argument("invalid value for 'h_inv'");
  if (!(cfg.dt >= 0.0)) throw std::invalid_argument("invalid value for 'dt'");
  if (cfg.n_steps < 1) throw std::invalid_argument("invalid value for 'n_steps'");
  if (cfg.formulation != "mfe" && cfg.formulation != "mhfe") {
    throw std::invalid_argument("invalid value for 'formulation': " + cfg.formulation);
  }
  if (cfg.precond != "direct" && cfg.precond != "cg") {
    throw std::invalid_argument("invalid value for 'precond': " + cfg.precond);
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("invalid value for 'tol'");
  if (cfg.max_it < 1) throw std::invalid_argument("invalid value for 'max_it'");
  if (!(cfg.contrast >= 1.0)) throw std::invalid_argument("invalid value for 'contrast'");
  if (cfg.dense_limit < 1) throw std::invalid_argument("invalid value for 'dense_limit'");
}

RunConfig parse_config(int argc, const char* const argv[]) {
  CLI::App app{"mixed and mixed-hybrid poromechanics solver"};
  app.allow_extras(false);

  std::string config_path;
  RunConfig flags;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--command", flags.command);
  app.add_option("--case", flags.case_name);
  app.add_option("--dim", flags.dim);
  app.add_option("--h-inv", flags.h_inv);
  app.add_option("--dt", flags.dt);
  app.add_option("--dt-factor", flags.dt_factor);
  app.add_option("--n-steps", flags.n_steps);
  app.add_option("--formulation", flags.formulation);
  app.add_option("--stabilized", flags.stabilized);
  app.add_option("--precond", flags.precond);
  app.add_option("--tol", flags.tol);
  app.add_option("--max-it", flags.max_it);
  app.add_option("--out", flags.out_dir);
  app.add_flag("--dump-matrices", flags.dump_matrices);
  app.add_option("--seed", flags.seed);
  app.add_option("--contrast", flags.contrast);
  app.add_option("--dense-limit", flags.dense_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(std::string("flag parsing failed: ") + e.what());
  }

  RunConfig cfg;
  bool have_command = false;
  if (!config_path.empty()) {
    cfg = parse_config_file(config_path);
    have_command = true;
  }

  if (app.count("--command")) {
    cfg.command = flags.command;
    have_command = true;
  }
  if (app.count("--case")) cfg.case_name = flags.case_name;
  if (app.count("--dim")) cfg.dim = flags.dim;
  if (app.count("--h-inv")) cfg.h_inv = flags.h_inv;
  if (app.count("--dt")) cfg.dt = flags.dt;
  if (app.count("--dt-factor")) cfg.dt_factor = flags.dt_factor;
  if (app.count("--n-steps")) cfg.n_steps = flags.n_steps;
  if (app.count("--formulation")) cfg.formulation = flags.formulation;
  if (app.count("--stabilized")) cfg.stabilized = flags.stabilized;
  if (app.count("--precond")) cfg.precond = flags.precond;
  if (app.count("--tol")) cfg.tol = flags.tol;
  if (app.count("--max-it")) cfg.max_it = flags.max_it;
  if (app.count("--out")) cfg.out_dir = flags.out_dir;
  if (app.count("--dump-matrices")) cfg.dump_matrices = flags.dump_matrices;
  if (app.count("--seed")) cfg.seed = flags.seed;
  if (app.count("--contrast")) cfg.contrast = flags.contrast;
  if (app.count("--dense-limit")) cfg.dense_limit = flags.dense_limit;

  if (!have_command) {
    throw std::invalid_argument("missing required config key 'command'");
  }
  validate_config(cfg);
  return cfg;
}

void apply_thread_env() {
  if (const char* env = std::getenv("POROMIX_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

}  // namespace poromix
