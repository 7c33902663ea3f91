#include "poromix/assembly.hpp"
#include "poromix/bench.hpp"
#include "poromix/timestep.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

using namespace poromix;

namespace {

Mat dense(const SpMat& a) { return Mat(a); }

BuiltCase built(const CaseDefinition& def) { return build_case(def); }

}  // namespace

TEST(Beta, ClosedForms) {
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.4;
  m.b = 1.0;
  m.mu = 1.0;
  m.kappa = {1.0, 1.0, 1.0};
  EXPECT_NEAR(stabilization_beta(m, 2), 1.1666666666666667e-6, 1e-19);
  EXPECT_NEAR(stabilization_beta(m, 3), 9.84375e-7, 1e-19);

  m.b = 0.0;
  EXPECT_EQ(stabilization_beta(m, 2), 0.0);
  EXPECT_EQ(stabilization_beta(m, 3), 0.0);
}

TEST(Beta, MatchesIndependentEvaluationOnRandomDraws) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> uE(1e4, 1e10), unu(0.0, 0.49), ub(0.1, 1.0);
  for (int dim : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      CellMaterial m;
      m.E = uE(rng);
      m.nu = unu(rng);
      m.b = ub(rng);
      const double g = m.E / (2.0 * (1.0 + m.nu));
      const double lam = m.E * m.nu / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu));
      const double expected = dim == 2 ? (m.b / 2.0) * (m.b / 2.0) / (2.0 * g + lam)
                                       : 9.0 * m.b * m.b / (32.0 * (lam + 4.0 * g));
      const double got = stabilization_beta(m, dim);
      EXPECT_NEAR(got, expected, 1e-14 * expected);
    }
  }
}

TEST(Stab, SingleMacroGraphLaplacian) {
  const auto mesh = build_structured_mesh(2, {2, 2, 1}, {1.0, 1.0, 1.0});
  const auto macros = build_macro_elements(mesh);
  CellMaterial m;
  m.E = 1e5;
  m.nu = 0.25;
  m.b = 1.0;
  m.mu = 1e-3;
  m.kappa = {1e-9, 1e-9, 1e-9};
  const std::vector<CellMaterial> mats(4, m);
  const SpMat a = assemble_stab(mesh, macros, mats);
  const double w = stabilization_beta(m, 2) * 1.0;

  Mat scaled = dense(a) / w;
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(scaled(k, k), 2.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(scaled);
  const Vec eig = es.eigenvalues();
  EXPECT_NEAR(eig(0), 0.0, 1e-12);
  EXPECT_NEAR(eig(1), 2.0, 1e-12);
  EXPECT_NEAR(eig(2), 2.0, 1e-12);
  EXPECT_NEAR(eig(3), 4.0, 1e-12);
}

TEST(Stab, UniformPressureInKernelAndZeroRowSums) {
  const auto bc = built(barry_mercer_case(8, 1e-6));
  const SpMat a = assemble_stab(bc.mesh, bc.macros, bc.materials);
  const Vec ones = Vec::Ones(bc.mesh.n_cells);
  EXPECT_LT((a * ones).cwiseAbs().maxCoeff(), 1e-18);

  // symmetric positive semidefinite
  Eigen::SelfAdjointEigenSolver<Mat> es(dense(a));
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-15 * es.eigenvalues().maxCoeff());
}

TEST(Stab, PatternSubsetOfPressureMultiplierProduct) {
  const auto bc = built(barry_mercer_case(4, 1e-6));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 1.0, Formulation::Mhfe, true, &bc.macros);
  const SpMat prod = sys.a_ppi * sys.a_pip;
  const Mat pd = dense(prod);
  const Mat sd = dense(sys.a_stab);
  for (int i = 0; i < sd.rows(); ++i) {
    for (int j = 0; j < sd.cols(); ++j) {
      if (sd(i, j) != 0.0) EXPECT_NE(pd(i, j), 0.0);
    }
  }
}

TEST(Assemble, RawDofCountsTable1) {
  const auto bc = built(cantilever_case(3, 10, 0.1));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.1, Formulation::Mfe, false, nullptr);
  EXPECT_EQ(sys.raw_n_u, 3993);
  EXPECT_EQ(sys.raw_n_flux, 3300);
  EXPECT_EQ(sys.raw_n_p, 1000);
}

TEST(Assemble, CondensedDiagonalVanishesWithoutStorageAndDt) {
  const auto bc = built(cantilever_case(2, 4, 0.0));
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.0, Formulation::Mhfe, false, nullptr);
  EXPECT_EQ(sys.abar_diag.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(sys.app_diag.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assemble, SkewCouplingExact) {
  const auto bc = built(barry_mercer_case(4, 1e-6));
  const BlockSystem mfe =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.5, Formulation::Mfe, true, &bc.macros);
  EXPECT_EQ((dense(mfe.a_pu) + dense(mfe.a_up).transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((dense(mfe.a_pq) + dense(mfe.a_qp).transpose()).cwiseAbs().maxCoeff(), 0.0);

  const BlockSystem mh =
      assemble(bc.mesh, bc.materials, bc.bcs, 0.5, Formulation::Mhfe, true, &bc.macros);
  EXPECT_EQ((dense(mh.a_pip) - dense(mh.a_ppi).transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assemble, StabilizedRequiresMacros) {
  const auto bc = built(cantilever_case(2, 4, 0.1));
  EXPECT_THROW(
      assemble(bc.mesh, bc.materials, bc.bcs, 0.1, Formulation::Mfe, true, nullptr),
      std::invalid_argument);
}

// Dense oracle: eliminating the discontinuous velocities from the assembled
// four-field system must reproduce the directly assembled condensed blocks.
TEST(Assemble, GlobalCondensationMatchesDenseElimination) {
  const auto bc = built(barry_mercer_case(4, 1e-6));
  const double dt = 0.37;
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, dt, Formulation::Mhfe, false, nullptr);
  const StructuredMesh& mesh = bc.mesh;

  const int nw = mesh.faces_per_cell() * mesh.n_cells;
  const int np = mesh.n_cells;
  const int npi = mesh.n_faces;
  Mat ww = Mat::Zero(nw, nw);
  Mat wp = Mat::Zero(nw, np);
  Mat wpi = Mat::Zero(nw, npi);
  for (int c = 0; c < mesh.n_cells; ++c) {
    const auto em = elem_matrices(mesh.cell_extents(c), 2, bc.materials[c]);
    const int base = mesh.faces_per_cell() * c;
    ww.block(base, base, 4, 4) = em.a_ww;
    wp.block(base, c, 4, 1) = em.a_wp;
    for (int l = 0; l < 4; ++l) wpi(base + l, mesh.cell_faces[c][l]) = em.a_wpi(l);
  }

  const Mat winv_wp = ww.llt().solve(wp);
  const Mat winv_wpi = ww.llt().solve(wpi);
  // A_pw = -A_wp^T and A_piw = -A_wpi^T; a_pp vanishes here (s_eps = 0)
  const Mat abar = dt * wp.transpose() * winv_wp;
  const Mat ppi = wp.transpose() * winv_wpi;
  const Mat pipi = wpi.transpose() * winv_wpi;

  EXPECT_LT((abar.diagonal() - sys.abar_diag).cwiseAbs().maxCoeff(),
            1e-12 * sys.abar_diag.maxCoeff());
  EXPECT_LT((abar - Mat(sys.abar_diag.asDiagonal())).cwiseAbs().maxCoeff(),
            1e-12 * sys.abar_diag.maxCoeff());
  const double scale = dense(sys.full_pipi).cwiseAbs().maxCoeff();
  EXPECT_LT((ppi - dense(sys.full_ppi)).cwiseAbs().maxCoeff(), 1e-12 * scale);
  EXPECT_LT((pipi - dense(sys.full_pipi)).cwiseAbs().maxCoeff(), 1e-12 * scale);
}

TEST(Boundary, BarryMercerTagging) {
  const auto bc = built(barry_mercer_case(16, 1e-6));
  int gp_faces = 0;
  for (int f = 0; f < bc.mesh.n_faces; ++f) {
    if (bc.mesh.is_boundary_face(f)) {
      EXPECT_TRUE(bc.bcs.face_on_pressure_boundary(f));
      ++gp_faces;
    }
  }
  EXPECT_EQ(gp_faces, 64);

  for (int n = 0; n < bc.mesh.n_nodes; ++n) {
    const auto sides = bc.mesh.node_boundary_sides(n);
    if (sides.empty()) {
      EXPECT_EQ(bc.bcs.node_fixed_mask[n], 0);
      continue;
    }
    // tangential constraint from each touching side
    for (int s : sides) {
      const int tangential = 1 - s / 2;
      EXPECT_TRUE(bc.bcs.disp_fixed(n, tangential));
    }
    // the normal component stays free unless a crossing side fixes it
    if (sides.size() == 1) {
      EXPECT_FALSE(bc.bcs.disp_fixed(n, sides[0] / 2));
    }
  }
}

TEST(Boundary, CantileverTagging) {
  const auto bc = built(cantilever_case(2, 8, 1e-5));
  for (int f = 0; f < bc.mesh.n_faces; ++f) {
    if (bc.mesh.is_boundary_face(f)) EXPECT_TRUE(bc.bcs.face_on_flux_boundary(f));
  }
  for (int n = 0; n < bc.mesh.n_nodes; ++n) {
    const Point x = bc.mesh.node_position(n);
    if (x[0] == 0.0) {
      EXPECT_TRUE(bc.bcs.disp_fixed(n, 0));
      EXPECT_TRUE(bc.bcs.disp_fixed(n, 1));
    } else {
      EXPECT_FALSE(bc.bcs.disp_fixed(n, 0));
    }
  }
}

TEST(Boundary, MissingSideRejected) {
  const auto mesh = build_structured_mesh(2, {2, 2, 1}, {1.0, 1.0, 1.0});
  CaseSpec empty;
  EXPECT_THROW(tag_boundary(mesh, empty), std::invalid_argument);

  CaseSpec dup;
  dup.set_side(XMin, SideBc{});
  EXPECT_THROW(dup.set_side(XMin, SideBc{}), std::invalid_argument);
}

TEST(Timestep, ZeroLoadsStayZero) {
  CaseDefinition def = cantilever_case(2, 4, 0.1);
  // strip the traction: nothing drives the system
  CaseSpec spec;
  SideBc clamped;
  for (int c = 0; c < 2; ++c) clamped.fix_disp[c] = true;
  spec.set_side(XMin, clamped);
  spec.set_side(XMax, SideBc{});
  spec.set_side(YMin, SideBc{});
  spec.set_side(YMax, SideBc{});
  def.spec = spec;

  const auto bc = build_case(def);
  for (Formulation form : {Formulation::Mfe, Formulation::Mhfe}) {
    const BlockSystem sys =
        assemble(bc.mesh, bc.materials, bc.bcs, 0.1, form, true, &bc.macros);
    const TimeStepper stepper(sys, SolveOptions{1e-10, 100, InnerKind::Direct});
    State st = make_initial_state(sys);
    for (int s = 1; s <= 2; ++s) st = stepper.advance(st, zero_source(), 0.1 * s);
    EXPECT_EQ(st.u_full.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(st.p.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Timestep, PointSourceLandsInTiedCell) {
  const auto bc = built(barry_mercer_case(8, 1e-6));
  const double dt = bc.def->dt;
  const BlockSystem sys =
      assemble(bc.mesh, bc.materials, bc.bcs, dt, Formulation::Mhfe, true, &bc.macros);
  const TimeStepper stepper(sys, SolveOptions{});
  const State st = make_initial_state(sys);
  const Vec rhs = stepper.build_rhs(st, bc.source, dt);

  const double beta_hat = barry_mercer_load_frequency(bc.materials[0]);
  const int expect_cell = bc.mesh.cell_index(1, 1, 0);  // tie at 0.25 goes low
  for (int k = 0; k < sys.n_p; ++k) {
    const double want = k == expect_cell ? dt * 2.0 * beta_hat * std::sin(beta_hat * dt) : 0.0;
    EXPECT_NEAR(rhs(sys.off_p() + k), want, 1e-18);
  }
}

TEST(Velocity, SingleElementOracleAndHydrostatics) {
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
  m.b = 1.0;
  m.mu = 1.0;
  m.kappa = {1.0, 1.0, 1.0};
  const std::vector<CellMaterial> mats(1, m);
  const BlockSystem sys = assemble(mesh, mats, bcs, 1.0, Formulation::Mhfe, false, nullptr);

  // uniform pressure: no flow
  Vec p = Vec::Ones(1);
  Vec pi = Vec::Ones(mesh.n_faces);
  auto w = reconstruct_velocity(sys, p, pi);
  EXPECT_LT(w[0].cwiseAbs().maxCoeff(), 1e-14);

  // prescribed multipliers: match the dense elemental Darcy solve
  pi << 1.0, 0.0, 0.5, 0.5;
  p(0) = 0.5;
  w = reconstruct_velocity(sys, p, pi);
  const auto em = elem_matrices({1.0, 1.0, 1.0}, 2, m);
  const Vec rhs = -(em.a_wp * p(0) + em.a_wpi.cwiseProduct(pi));
  const Vec expected = em.a_ww.ldlt().solve(rhs);
  EXPECT_LT((w[0] - expected).cwiseAbs().maxCoeff(), 1e-13);
  // flow enters from the high-pressure face and leaves the low one
  EXPECT_LT(w[0](0), 0.0);
  EXPECT_GT(w[0](1), 0.0);
}
