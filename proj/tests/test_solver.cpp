#include "poromix/bench.hpp"
#include "poromix/factor.hpp"
#include "poromix/gmres.hpp"
#include "poromix/preconditioner.hpp"
#include "poromix/timestep.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace poromix;

namespace {

SpMat sparse_from(const Mat& m) {
  std::vector<Triplet> t;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) t.emplace_back(i, j, m(i, j));
    }
  }
  SpMat a(m.rows(), m.cols());
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST(Factor, IdentityAndHandSolve) {
  Mat id = Mat::Identity(5, 5);
  const SpdFactor fi(sparse_from(id));
  Vec b(5);
  b << 1, 2, 3, 4, 5;
  EXPECT_LT((fi.solve(b) - b).cwiseAbs().maxCoeff(), 1e-15);

  Mat a(2, 2);
  a << 4, 1, 1, 3;
  const SpdFactor fa(sparse_from(a));
  Vec b2(2);
  b2 << 1, 2;
  const Vec x = fa.solve(b2);
  EXPECT_NEAR(x(0), 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(x(1), 7.0 / 11.0, 1e-15);
}

TEST(Factor, ElasticityBlockIsSpd) {
  // clamped-boundary displacement block of a 2D 4x4 mesh
  CaseDefinition def = cantilever_case(2, 4, 0.1);
  const auto bc = build_case(def);
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.1, Formulation::Mfe, false, nullptr);
  EXPECT_NO_THROW(SpdFactor{sys.a_uu});
}

TEST(Factor, IndefiniteRejected) {
  Mat a(2, 2);
  a << 1, 2, 2, 1;
  EXPECT_THROW(SpdFactor{sparse_from(a)}, NotSpdError);
}

TEST(Factor, InnerCgMatchesDirect) {
  Mat a(3, 3);
  a << 4, 1, 0, 1, 5, 2, 0, 2, 6;
  Vec b(3);
  b << 1, -2, 3;
  const InnerSolver direct(sparse_from(a), InnerKind::Direct);
  const InnerSolver cg(sparse_from(a), InnerKind::Cg, 1e-13, 100);
  EXPECT_LT((direct.solve(b) - cg.solve(b)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Gmres, IdentityConvergesInOneIteration) {
  const int n = 17;
  LinOp eye = [](const Vec& x, Vec& y) { y = x; };
  Vec b = Vec::LinSpaced(n, 1.0, 2.0);
  SolverReport rep;
  const Vec x = gmres(eye, eye, b, 1e-10, 10, rep);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.n_it, 1);
  EXPECT_LT((x - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gmres, SolvesRandomSystemAndHistoryMonotone) {
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  const int n = 40;
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  }
  a += n * Mat::Identity(n, n);  // well conditioned, non-symmetric
  Vec b(n);
  for (int i = 0; i < n; ++i) b(i) = gauss(rng);

  LinOp apply_a = [&a](const Vec& x, Vec& y) { y = a * x; };
  LinOp ident = [](const Vec& x, Vec& y) { y = x; };
  SolverReport rep;
  const Vec x = gmres(apply_a, ident, b, 1e-12, n + 1, rep);
  EXPECT_TRUE(rep.converged);
  EXPECT_LT((a * x - b).norm(), 1e-11 * b.norm());
  for (std::size_t i = 1; i < rep.res_history.size(); ++i) {
    EXPECT_LE(rep.res_history[i], rep.res_history[i - 1] + 1e-15);
  }
}

TEST(Gmres, ReportsNonConvergence) {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  const int n = 30;
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  }
  a += n * Mat::Identity(n, n);
  Vec b = Vec::Ones(n);
  LinOp apply_a = [&a](const Vec& x, Vec& y) { y = a * x; };
  LinOp ident = [](const Vec& x, Vec& y) { y = x; };
  SolverReport rep;
  const Vec x = gmres(apply_a, ident, b, 1e-14, 3, rep);
  EXPECT_FALSE(rep.converged);
  EXPECT_EQ(rep.n_it, 3);
  EXPECT_GT(x.norm(), 0.0);  // partial solution returned
}

TEST(Schur, BtildeSingleElementValue) {
  // single 2D element, mu/kappa = 1, dt = 1, s_eps = 0, b = 0
  const auto mesh = build_structured_mesh(2, {1, 1, 1}, {1.0, 1.0, 1.0});
  CaseSpec spec;
  for (int s = 0; s < 4; ++s) {
    SideBc side;
    side.flow = FlowBc::Pressure;
    spec.set_side(s, side);
  }
  const auto bcs = tag_boundary(mesh, spec);
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.2;
  m.b = 0.0;
  m.mu = 1.0;
  m.kappa = {1.0, 1.0, 1.0};
  const std::vector<CellMaterial> mats(1, m);
  const BlockSystem sys = assemble(mesh, mats, bcs, 1.0, Formulation::Mhfe, false, nullptr);
  const Vec btilde = build_schur_btilde(sys);
  ASSERT_EQ(btilde.size(), 1);
  EXPECT_NEAR(btilde(0), 24.0, 1e-12);
}

TEST(Schur, BtildeReducesToFixedStressAndGrowsWithDt) {
  const auto bc = build_case(cantilever_case(2, 4, 0.1));
  const BlockSystem sys0 =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.0, Formulation::Mhfe, false, nullptr);
  const Vec b0 = build_schur_btilde(sys0);
  const Vec fs = fixed_stress_diag(sys0.a_uu, sys0.a_up, sys0.n_p);
  EXPECT_LT((b0 - fs).cwiseAbs().maxCoeff(), 1e-18);

  const BlockSystem sys1 =
      assemble(bc.mesh, bc.materials, bc.bcs, 1e-3, Formulation::Mhfe, false, nullptr);
  const BlockSystem sys2 =
      assemble(bc.mesh, bc.materials, bc.bcs, 1e-2, Formulation::Mhfe, false, nullptr);
  const Vec b1 = build_schur_btilde(sys1);
  const Vec b2 = build_schur_btilde(sys2);
  EXPECT_GE((b1 - b0).minCoeff(), 0.0);
  EXPECT_GE((b2 - b1).minCoeff(), 0.0);
}

TEST(Schur, CtildeAtZeroDtIsMultiplierBlock) {
  const auto bc = build_case(barry_mercer_case(4, 1e-6));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.0, Formulation::Mhfe, true, &bc.macros);
  Vec btilde = build_schur_btilde(sys);
  btilde.array() += 1.0;  // dt = 0 leaves the diagonal empty here; any positive works
  const SpMat ct = build_schur_ctilde(sys, btilde);
  EXPECT_LT((Mat(ct) - Mat(sys.a_pipi)).cwiseAbs().maxCoeff(), 1e-18);
}

TEST(Schur, CtildeMixedHandValue) {
  // one cell, all nodes clamped, drained sides: Ctilde_p = s_eps |T| + dt v^T L^{-1} v
  const auto mesh = build_structured_mesh(2, {1, 1, 1}, {1.0, 1.0, 1.0});
  CaseSpec spec;
  for (int s = 0; s < 4; ++s) {
    SideBc side;
    side.flow = FlowBc::Pressure;
    side.fix_disp = {true, true, true};
    spec.set_side(s, side);
  }
  const auto bcs = tag_boundary(mesh, spec);
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.2;
  m.b = 1.0;
  m.s_eps = 0.01;
  m.mu = 1.0;
  m.kappa = {1.0, 1.0, 1.0};
  const std::vector<CellMaterial> mats(1, m);
  const BlockSystem sys = assemble(mesh, mats, bcs, 0.5, Formulation::Mfe, false, nullptr);
  EXPECT_EQ(sys.n_u(), 0);
  const SpMat ct = build_schur_ctilde_mixed(sys);
  ASSERT_EQ(ct.rows(), 1);
  EXPECT_NEAR(Mat(ct)(0, 0), 0.01 + 0.5 * 8.0, 1e-13);
}

TEST(Schur, CtildeMixedReducesToFixedStress) {
  const auto bc = build_case(cantilever_case(2, 4, 0.1));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.0, Formulation::Mfe, false, nullptr);
  const SpMat ct = build_schur_ctilde_mixed(sys);
  const Vec fs = fixed_stress_diag(sys.a_uu, sys.a_up, sys.n_p);
  EXPECT_LT((Mat(ct) - Mat(fs.asDiagonal())).cwiseAbs().maxCoeff(), 1e-18);
}

TEST(Precond, ZeroResidualGivesZero) {
  const auto bc = build_case(barry_mercer_case(4, 1e-6));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.1, Formulation::Mhfe, true, &bc.macros);
  const BlockPreconditioner prec = build_preconditioner(sys);
  Vec z;
  prec.apply(Vec::Zero(sys.total_dofs()), z);
  EXPECT_EQ(z.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Precond, DenseTriangularOracle) {
  const auto bc = build_case(barry_mercer_case(4, 1e-6));
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;

  for (Formulation form : {Formulation::Mhfe, Formulation::Mfe}) {
    const BlockSystem sys =
        assemble(bc.mesh, bc.materials, bc.bcs, 0.05, form, true, &bc.macros);
    const BlockPreconditioner prec = build_preconditioner(sys);
    const int n = sys.total_dofs();
    const int nu = sys.n_u(), np = sys.n_p, nf = sys.n_flux();

    Mat m = Mat::Zero(n, n);
    if (form == Formulation::Mhfe) {
      m.block(0, 0, nu, nu) = Mat(sys.a_uu);
      m.block(0, nu, nu, np) = Mat(sys.a_up);
      m.block(nu, nu, np, np) = Mat(prec.btilde.asDiagonal());
      m.block(nu, nu + np, np, nf) = sys.dt * Mat(sys.a_ppi);
      m.block(nu + np, nu + np, nf, nf) = Mat(build_schur_ctilde(sys, prec.btilde));
    } else {
      m.block(0, 0, nu, nu) = Mat(sys.a_uu);
      m.block(nu, nu, nf, nf) = Mat(sys.a_qq);
      m.block(nu + nf, 0, np, nu) = Mat(sys.a_pu);
      m.block(nu + nf, nu, np, nf) = sys.dt * Mat(sys.a_pq);
      m.block(nu + nf, nu + nf, np, np) = Mat(build_schur_ctilde_mixed(sys));
    }

    Vec r(n);
    for (int i = 0; i < n; ++i) r(i) = gauss(rng);
    Vec z;
    prec.apply(r, z);
    EXPECT_LT((m * z - r).norm(), 1e-12 * r.norm());
  }
}

TEST(Integration, HybridizationExactness2D) {
  const auto bc = build_case(barry_mercer_case(4, 1e-6));
  const double dt = 0.05;
  SolveOptions opts{1e-12, 2000, InnerKind::Direct};
  const TransientResult mfe = run_transient(bc, Formulation::Mfe, true, dt, 1, opts);
  const TransientResult mh = run_transient(bc, Formulation::Mhfe, true, dt, 1, opts);
  const double pscale = mh.state.p.cwiseAbs().maxCoeff();
  const double uscale = mh.state.u_full.cwiseAbs().maxCoeff();
  EXPECT_LT((mfe.state.p - mh.state.p).cwiseAbs().maxCoeff(), 1e-8 * pscale);
  EXPECT_LT((mfe.state.u_full - mh.state.u_full).cwiseAbs().maxCoeff(), 1e-8 * uscale);
}

TEST(Integration, InteriorFluxContinuity) {
  const auto bc = build_case(barry_mercer_case(8, 1e-6));
  const double dt = 0.05;
  const TransientResult res = run_transient(bc, Formulation::Mhfe, true, dt, 1,
                                            SolveOptions{1e-12, 2000, InnerKind::Direct});
  const StructuredMesh& mesh = bc.mesh;
  double wmax = 0.0;
  for (const auto& w : res.state.w) wmax = std::max(wmax, w.cwiseAbs().maxCoeff());
  for (int f = 0; f < mesh.n_faces; ++f) {
    if (mesh.is_boundary_face(f)) continue;
    double outward[2] = {0.0, 0.0};
    for (int side = 0; side < 2; ++side) {
      const int c = mesh.face_cells[f][side];
      for (int loc = 0; loc < mesh.faces_per_cell(); ++loc) {
        if (mesh.cell_faces[c][loc] == f) outward[side] = res.state.w[c](loc);
      }
    }
    EXPECT_LT(std::abs(outward[0] + outward[1]), 1e-8 * wmax);
  }
}

TEST(Integration, MassConservation) {
  const auto bc = build_case(barry_mercer_case(8, 1e-6));
  const double dt = 0.05;
  SolveOptions opts{1e-12, 2000, InnerKind::Direct};

  for (Formulation form : {Formulation::Mfe, Formulation::Mhfe}) {
    // unstabilized: cell-wise
    {
      const BlockSystem sys =
          assemble(bc.mesh, bc.materials, bc.bcs, dt, form, false, nullptr);
      const TimeStepper stepper(sys, opts);
      const State st0 = make_initial_state(sys);
      const State st1 = stepper.advance(st0, bc.source, dt);
      const Vec b = stepper.build_rhs(st0, bc.source, dt);
      const double fp_norm = b.segment(sys.off_p(), sys.n_p).norm();
      const Vec r = continuity_residual(sys, st0, st1, bc.source);
      EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10 * fp_norm);
    }
    // stabilized: summed over each macro-element
    {
      const BlockSystem sys =
          assemble(bc.mesh, bc.materials, bc.bcs, dt, form, true, &bc.macros);
      const TimeStepper stepper(sys, opts);
      const State st0 = make_initial_state(sys);
      const State st1 = stepper.advance(st0, bc.source, dt);
      const Vec b = stepper.build_rhs(st0, bc.source, dt);
      const double fp_norm = b.segment(sys.off_p(), sys.n_p).norm();
      const Vec r = continuity_residual(sys, st0, st1, bc.source);
      for (const auto& mac : bc.macros.macros) {
        double sum = 0.0;
        for (int c : mac.cells) sum += r(c);
        EXPECT_LT(std::abs(sum), 1e-10 * fp_norm);
      }
      // and the cell-wise residual is the stabilization flux
      const Vec expected = sys.a_stab * st1.p;
      EXPECT_LT((r - expected).cwiseAbs().maxCoeff(), 1e-10 * fp_norm);
    }
  }
}
