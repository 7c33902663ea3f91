#include "poromix/preconditioner.hpp"

#include <chrono>
#include <stdexcept>

namespace poromix {

Vec fixed_stress_diag(const SpMat& a_uu, const SpMat& a_up, int n_p) {
  const Vec uu_diag = a_uu.diagonal();
  for (int i = 0; i < uu_diag.size(); ++i) {
    if (uu_diag(i) == 0.0) throw std::runtime_error("zero diagonal entry in A_uu");
  }
  Vec fs = Vec::Zero(n_p);
  for (int r = 0; r < a_up.outerSize(); ++r) {
    for (SpMat::InnerIterator it(a_up, r); it; ++it) {
      fs(it.col()) += it.value() * it.value() / uu_diag(r);
    }
  }
  return fs;
}

Vec build_schur_btilde(const BlockSystem& sys) {
  if (sys.form != Formulation::Mhfe) {
    throw std::invalid_argument("btilde is defined for the hybrid formulation");
  }
  Vec btilde = sys.abar_diag + fixed_stress_diag(sys.a_uu, sys.a_up, sys.n_p);
  if (sys.stabilized) btilde += sys.a_stab.diagonal();
  return btilde;
}

SpMat build_schur_ctilde(const BlockSystem& sys, const Vec& btilde) {
  for (int i = 0; i < btilde.size(); ++i) {
    if (!(btilde(i) > 0.0)) throw std::runtime_error("btilde must be strictly positive");
  }
  const SpMat scaled = btilde.cwiseInverse().asDiagonal() * sys.a_ppi;
  const SpMat prod = sys.a_pip * scaled;
  SpMat ctilde = sys.a_pipi - sys.dt * prod;
  ctilde.makeCompressed();
  return ctilde;
}

SpMat build_schur_ctilde_mixed(const BlockSystem& sys) {
  if (sys.form != Formulation::Mfe) {
    throw std::invalid_argument("ctilde_p is defined for the mixed formulation");
  }
  // Lumped diagonal of A_qq by absolute row sums.
  Vec lump = Vec::Zero(sys.n_flux());
  for (int r = 0; r < sys.a_qq.outerSize(); ++r) {
    for (SpMat::InnerIterator it(sys.a_qq, r); it; ++it) {
      lump(r) += std::abs(it.value());
    }
  }
  for (int i = 0; i < lump.size(); ++i) {
    if (!(lump(i) > 0.0)) throw std::runtime_error("zero lumped entry in A_qq");
  }

  const SpMat scaled = lump.cwiseInverse().asDiagonal() * sys.a_qp;
  const SpMat prod = SpMat(sys.a_qp.transpose()) * scaled;
  SpMat ctilde = sys.dt * prod;

  Vec diag = sys.app_diag + fixed_stress_diag(sys.a_uu, sys.a_up, sys.n_p);
  std::vector<Triplet> trips;
  trips.reserve(sys.n_p);
  for (int i = 0; i < sys.n_p; ++i) trips.emplace_back(i, i, diag(i));
  SpMat d(sys.n_p, sys.n_p);
  d.setFromTriplets(trips.begin(), trips.end());
  ctilde += d;
  if (sys.stabilized) ctilde += sys.a_stab;
  ctilde.makeCompressed();
  return ctilde;
}

BlockPreconditioner build_preconditioner(const BlockSystem& sys, InnerKind inner_uu) {
  const auto t0 = std::chrono::steady_clock::now();
  BlockPreconditioner prec;
  prec.form = sys.form;
  prec.sys = &sys;
  prec.inv_uu = InnerSolver(sys.a_uu, inner_uu);
  if (sys.form == Formulation::Mhfe) {
    prec.btilde = build_schur_btilde(sys);
    prec.btilde_inv = prec.btilde.cwiseInverse();
    prec.inv_ctilde = InnerSolver(build_schur_ctilde(sys, prec.btilde), InnerKind::Direct);
  } else {
    prec.inv_qq = InnerSolver(sys.a_qq, InnerKind::Direct);
    prec.inv_ctilde = InnerSolver(build_schur_ctilde_mixed(sys), InnerKind::Direct);
  }
  prec.setup_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return prec;
}

void BlockPreconditioner::apply(const Vec& r, Vec& z) const {
  const BlockSystem& s = *sys;
  z.resize(s.total_dofs());
  if (form == Formulation::Mhfe) {
    const Vec z_pi = inv_ctilde.solve(r.segment(s.off_pi(), s.n_flux()));
    const Vec z_p =
        btilde_inv.cwiseProduct(r.segment(s.off_p(), s.n_p) - s.dt * (s.a_ppi * z_pi));
    const Vec z_u = inv_uu.solve(r.segment(s.off_u(), s.n_u()) - s.a_up * z_p);
    z.segment(s.off_u(), s.n_u()) = z_u;
    z.segment(s.off_p(), s.n_p) = z_p;
    z.segment(s.off_pi(), s.n_flux()) = z_pi;
  } else {
    const Vec z_u = inv_uu.solve(r.segment(s.off_u(), s.n_u()));
    const Vec z_q = inv_qq.solve(r.segment(s.off_q(), s.n_flux()));
    const Vec z_p = inv_ctilde.solve(r.segment(s.off_p(), s.n_p) - s.a_pu * z_u -
                                     s.dt * (s.a_pq * z_q));
    z.segment(s.off_u(), s.n_u()) = z_u;
    z.segment(s.off_q(), s.n_flux()) = z_q;
    z.segment(s.off_p(), s.n_p) = z_p;
  }
}

Vec solve_block_system(const BlockSystem& sys, const BlockPreconditioner& prec,
                       const Vec& rhs, const SolveOptions& opts, SolverReport& report) {
  LinOp apply_a = [&sys](const Vec& x, Vec& y) { sys.apply(x, y); };
  LinOp apply_m = [&prec](const Vec& r, Vec& z) { prec.apply(r, z); };
  Vec x = gmres(apply_a, apply_m, rhs, opts.tol, opts.max_it, report);
  report.t_prec = prec.setup_seconds;
  report.t_total = report.t_prec + report.t_solve;
  return x;
}

}  // namespace poromix
