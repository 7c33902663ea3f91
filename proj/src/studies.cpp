#include "poromix/studies.hpp"

#include "poromix/sparse_io.hpp"
#include "poromix/spectral.hpp"
#include "poromix/vtk.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace poromix {

namespace {

Formulation formulation_of(const std::string& name) {
  return name == "mfe" ? Formulation::Mfe : Formulation::Mhfe;
}

InnerKind inner_of(const std::string& name) {
  return name == "cg" ? InnerKind::Cg : InnerKind::Direct;
}

struct CsvFile {
  std::FILE* fp = nullptr;
  explicit CsvFile(const std::string& path) {
    fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  }
  ~CsvFile() {
    if (fp) std::fclose(fp);
  }
  void header(const char* h) { std::fprintf(fp, "%s\n", h); }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string tnum(double v) {  // timings: reported, never diffed
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_run(const RunConfig& cfg) {
  const CaseDefinition def = case_from_config(cfg);
  const BuiltCase bc = build_case(def);
  SolveOptions opts{cfg.tol, cfg.max_it, inner_of(cfg.precond)};
  const Formulation form = formulation_of(cfg.formulation);

  const double dt = def.dt;
  const BlockSystem sys = assemble(bc.mesh, bc.materials, bc.bcs, dt, form, cfg.stabilized,
                                   bc.has_macros ? &bc.macros : nullptr);
  if (cfg.dump_matrices) {
    const std::string d = cfg.out_dir + "/";
    write_matrix_market(sys.a_uu, d + "a_uu.mtx");
    write_matrix_market(sys.a_up, d + "a_up.mtx");
    if (form == Formulation::Mfe) {
      write_matrix_market(sys.a_qq, d + "a_qq.mtx");
      write_matrix_market(sys.a_qp, d + "a_qp.mtx");
    } else {
      write_matrix_market(sys.a_ppi, d + "a_ppi.mtx");
      write_matrix_market(sys.a_pipi, d + "a_pipi.mtx");
    }
    if (cfg.stabilized) write_matrix_market(sys.a_stab, d + "a_stab.mtx");
  }

  const TimeStepper stepper(sys, opts);
  State state = make_initial_state(sys);
  SolverReport rep;
  bool ok = true;
  int total_it = 0;
  try {
    for (int s = 1; s <= cfg.n_steps; ++s) {
      state = stepper.advance(state, bc.source, s * dt, &rep);
      total_it += rep.n_it;
    }
  } catch (const std::runtime_error&) {
    ok = false;
  }

  write_vtk(bc.mesh, state, cfg.out_dir + "/solution.vtk");
  CsvFile csv(cfg.out_dir + "/summary.csv");
  csv.header("case,formulation,stabilized,h_inv,dt,steps,total_iterations,t_p,t_s,t_t,converged");
  std::fprintf(csv.fp, "%s,%s,%d,%d,%s,%d,%d,%s,%s,%s,%d\n", def.name.c_str(),
               cfg.formulation.c_str(), cfg.stabilized ? 1 : 0, cfg.h_inv, num(dt).c_str(),
               cfg.n_steps, total_it, tnum(rep.t_prec).c_str(), tnum(rep.t_solve).c_str(),
               tnum(rep.t_total).c_str(), ok ? 1 : 0);
  return ok ? 0 : 1;
}

int cmd_table2(const RunConfig& cfg) {
  CsvFile csv(cfg.out_dir + "/table2.csv");
  csv.header("h_inv,formulation,stabilized,dt,n_it,t_p,t_s,t_t");
  bool ok = true;
  for (const char* fname : {"mfe", "mhfe"}) {
    for (const bool stab : {false, true}) {
      const CaseDefinition def = cantilever_case(3, cfg.h_inv, cfg.dt);
      const BuiltCase bc = build_case(def);
      SolveOptions opts{cfg.tol, cfg.max_it, inner_of(cfg.precond)};
      TransientResult res;
      int n_it = -1;
      try {
        res = run_transient(bc, formulation_of(fname), stab, cfg.dt, 1, opts);
        n_it = res.last_report.n_it;
      } catch (const std::runtime_error&) {
        ok = false;
      }
      std::fprintf(csv.fp, "%d,%s,%d,%s,%d,%s,%s,%s\n", cfg.h_inv, fname, stab ? 1 : 0,
                   num(cfg.dt).c_str(), n_it, tnum(res.last_report.t_prec).c_str(),
                   tnum(res.last_report.t_solve).c_str(),
                   tnum(res.last_report.t_total).c_str());
    }
  }
  return ok ? 0 : 1;
}

int cmd_eigencheck(const RunConfig& cfg) {
  CsvFile csv(cfg.out_dir + "/eigencheck.csv");
  csv.header("check,mesh,dt,value,bound,status");
  bool all_ok = true;
  auto emit = [&](const char* check, const std::string& mesh, double dt, double value,
                  double bound, bool ok) {
    all_ok = all_ok && ok;
    std::fprintf(csv.fp, "%s,%s,%s,%s,%s,%s\n", check, mesh.c_str(), num(dt).c_str(),
                 num(value).c_str(), num(bound).c_str(), ok ? "ok" : "FAIL");
  };

  // Unit-eigenvalue multiplicity of the preconditioned operator.
  for (int n : {2, 4}) {
    const BuiltCase bc = build_case(drained_box_case(2, n, cfg.dt_factor));
    const BlockSystem sys = assemble(bc.mesh, bc.materials, bc.bcs, bc.def->dt,
                                     Formulation::Mhfe, true, &bc.macros);
    const SpectralReport rep = spectral_diagnostics(sys, cfg.dense_limit);
    emit("theorem1-unit-multiplicity", "2d-" + std::to_string(n), sys.dt,
         rep.n_unit, rep.n_expected, rep.unit_multiplicity_ok);

    const SpectralReport exact = spectral_diagnostics(sys, dense_bp(sys), cfg.dense_limit);
    emit("theorem1-exact-bp", "2d-" + std::to_string(n), sys.dt, exact.max_t_deviation,
         1e-8, exact.max_t_deviation <= 1e-8);
  }

  // Eigenvalue bound on Z.
  for (double dt : {1e-5, 1e-1}) {
    const BuiltCase bc = build_case(drained_box_case(2, 4, cfg.dt_factor));
    const BlockSystem sys =
        assemble(bc.mesh, bc.materials, bc.bcs, dt, Formulation::Mhfe, true, &bc.macros);
    const SpectralReport rep = spectral_diagnostics(sys, cfg.dense_limit);
    emit("lemma1-z-bound", "2d-4", dt, rep.max_violation, 1e-10,
         rep.max_violation <= 1e-10);
  }

  // SPD and monotonicity of the second-level Schur surrogate over dt.
  const double dts[] = {1e-8, 1e-6, 1e-4, 1e-2, 1.0, 1e2};
  for (const int dim : {2, 3}) {
    const int n = dim == 2 ? 8 : 4;
    const BuiltCase bc = build_case(drained_box_case(dim, n, cfg.dt_factor));
    const std::string mesh_tag = std::to_string(dim) + "d-" + std::to_string(n);
    Vec prev;
    double min_eig = 1e300;
    double floor_eig = 0.0;
    for (double dt : dts) {
      const BlockSystem sys =
          assemble(bc.mesh, bc.materials, bc.bcs, dt, Formulation::Mhfe, true, &bc.macros);
      const Vec btilde = build_schur_btilde(sys);
      const SpMat ctilde = build_schur_ctilde(sys, btilde);
      bool spd = true;
      try {
        SpdFactor f(ctilde);
      } catch (const NotSpdError&) {
        spd = false;
      }
      emit("theorem2-ctilde-spd", mesh_tag, dt, spd ? 1.0 : 0.0, 1.0, spd);

      const Mat ctilde_dense(ctilde);
      Eigen::SelfAdjointEigenSolver<Mat> es(ctilde_dense);
      const Vec eigs = es.eigenvalues();
      if (prev.size() > 0) {
        const double worst = (eigs - prev).maxCoeff();
        const double tol_mono = 1e-9 * prev.cwiseAbs().maxCoeff();
        emit("lemma3-monotone", mesh_tag, dt, worst, tol_mono, worst <= tol_mono);
      }
      prev = eigs;
      min_eig = std::min(min_eig, eigs.minCoeff());

      Eigen::SelfAdjointEigenSolver<Mat> esf(dense_ctilde_infinity(sys));
      floor_eig = esf.eigenvalues().minCoeff();
    }
    emit("lemma3-lower-bound", mesh_tag, dts[5], min_eig,
         floor_eig - 1e-9 * std::abs(floor_eig),
         floor_eig > 0.0 && min_eig >= floor_eig - 1e-9 * std::abs(floor_eig));
  }
  return all_ok ? 0 : 1;
}

int cmd_convergence(const RunConfig& cfg) {
  const int finest = std::max(cfg.h_inv, 8);
  const auto rows = barry_mercer_convergence(finest, cfg.tol);
  CsvFile csv(cfg.out_dir + "/convergence.csv");
  csv.header("formulation,h,error,slope");
  bool ok = true;
  double err_mfe = -1.0;
  for (const auto& r : rows) {
    std::fprintf(csv.fp, "%s,%s,%s,%s\n", r.formulation.c_str(), num(r.h).c_str(),
                 num(r.error).c_str(), num(r.slope).c_str());
    ok = ok && r.slope >= 0.8 && r.slope <= 1.2;
    if (r.formulation == "mfe") {
      err_mfe = r.error;
    } else if (err_mfe > 0.0) {
      ok = ok && std::abs(r.error - err_mfe) <= 0.05 * std::max(r.error, err_mfe);
    }
  }
  return ok ? 0 : 1;
}

int cmd_spe10mini(const RunConfig& cfg) {
  CsvFile csv(cfg.out_dir + "/spe10mini.csv");
  csv.header("contrast,n_it,t_p,t_s,t_t,converged");
  SolveOptions opts{cfg.tol, cfg.max_it, inner_of(cfg.precond)};
  const double contrasts[] = {1.0, std::max(cfg.contrast, 1.0)};
  int base_it = -1;
  bool ok = true;
  for (double contrast : contrasts) {
    const CaseDefinition def = heterogeneous_case(cfg.seed, contrast, cfg.h_inv);
    const BuiltCase bc = build_case(def);
    int n_it = -1;
    SolverReport rep;
    try {
      TransientResult res = run_transient(bc, formulation_of(cfg.formulation),
                                          cfg.stabilized, def.dt, 1, opts);
      n_it = res.last_report.n_it;
      rep = res.last_report;
    } catch (const std::runtime_error&) {
      ok = false;
    }
    std::fprintf(csv.fp, "%s,%d,%s,%s,%s,%d\n", num(contrast).c_str(), n_it,
                 tnum(rep.t_prec).c_str(), tnum(rep.t_solve).c_str(),
                 tnum(rep.t_total).c_str(), n_it >= 0 ? 1 : 0);
    if (base_it < 0) {
      base_it = n_it;
    } else if (n_it > 0 && base_it > 0) {
      ok = ok && n_it < 2 * base_it;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

CaseDefinition case_from_config(const RunConfig& cfg) {
  if (cfg.case_name == "barry-mercer") return barry_mercer_case(cfg.h_inv, cfg.dt_factor);
  if (cfg.case_name == "cantilever") return cantilever_case(cfg.dim, cfg.h_inv, cfg.dt);
  if (cfg.case_name == "drained-box") return drained_box_case(cfg.dim, cfg.h_inv, cfg.dt_factor);
  if (cfg.case_name == "spe10mini") return heterogeneous_case(cfg.seed, cfg.contrast, cfg.h_inv);
  throw std::invalid_argument("invalid value for 'case': " + cfg.case_name);
}

std::vector<ConvergenceRow> barry_mercer_convergence(int finest, double tol,
                                                     int initial_steps) {
  std::vector<int> levels;
  for (int n = 8; n <= finest; n *= 2) levels.push_back(n);
  if (levels.size() < 3) throw std::invalid_argument("need at least 3 refinement levels");
  const int n_ref = 2 * finest;

  SolveOptions opts{std::min(tol, 1e-8), 2000, InnerKind::Direct};
  const double period = barry_mercer_case(8, 1.0).t_end;

  auto compute_errors = [&](int n_steps, std::vector<double>& errs_mfe,
                            std::vector<double>& errs_mhfe) {
    const double dt = period / n_steps;
    const BuiltCase ref_case = build_case(barry_mercer_case(n_ref, 1.0 / n_steps));
    const TransientResult ref =
        run_transient(ref_case, Formulation::Mhfe, true, dt, n_steps, opts);
    errs_mfe.clear();
    errs_mhfe.clear();
    for (int n : levels) {
      const BuiltCase bc = build_case(barry_mercer_case(n, 1.0 / n_steps));
      for (Formulation form : {Formulation::Mfe, Formulation::Mhfe}) {
        const TransientResult res = run_transient(bc, form, true, dt, n_steps, opts);
        const double err =
            l2_pressure_error(bc.mesh, res.state.p, ref_case.mesh, ref.state.p);
        (form == Formulation::Mfe ? errs_mfe : errs_mhfe).push_back(err);
      }
    }
  };

  std::vector<double> mfe, mhfe, mfe_prev, mhfe_prev;
  int n_steps = initial_steps;
  compute_errors(n_steps, mfe, mhfe);
  for (int halvings = 0; halvings < 3; ++halvings) {
    mfe_prev = mfe;
    mhfe_prev = mhfe;
    n_steps *= 2;
    compute_errors(n_steps, mfe, mhfe);
    double change = 0.0;
    for (std::size_t i = 0; i < mfe.size(); ++i) {
      change = std::max(change, std::abs(mfe[i] - mfe_prev[i]) / mfe[i]);
      change = std::max(change, std::abs(mhfe[i] - mhfe_prev[i]) / mhfe[i]);
    }
    if (change < 0.01) break;
  }

  std::vector<double> hs;
  for (int n : levels) hs.push_back(1.0 / n);
  const double slope_mfe = convergence_slope(hs, mfe);
  const double slope_mhfe = convergence_slope(hs, mhfe);

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    rows.push_back({"mfe", hs[i], mfe[i], slope_mfe});
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    rows.push_back({"mhfe", hs[i], mhfe[i], slope_mhfe});
  }
  return rows;
}

int run_study(const RunConfig& cfg) {
  validate_config(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.command == "run") return cmd_run(cfg);
  if (cfg.command == "table2") return cmd_table2(cfg);
  if (cfg.command == "eigencheck") return cmd_eigencheck(cfg);
  if (cfg.command == "convergence") return cmd_convergence(cfg);
  if (cfg.command == "spe10mini") return cmd_spe10mini(cfg);
  throw std::invalid_argument("invalid value for 'command': " + cfg.command);
}

}  // namespace poromix
