#include "poromix/spectral.hpp"

#include "poromix/preconditioner.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>

namespace poromix {

namespace {

double two_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace

Vec macro_schur_eigenvalues(const StructuredMesh& mesh, const MacroElement& macro,
                            const CellMaterial& material, double beta) {
  const int dim = mesh.dim;
  const int np = static_cast<int>(macro.cells.size());

  // Bounding box of the macro-element; nodes strictly inside are free.
  std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (int c : macro.cells) {
    const auto idx = mesh.cell_multi_index(c);
    for (int a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], mesh.coords[a][idx[a]]);
      hi[a] = std::max(hi[a], mesh.coords[a][idx[a] + 1]);
    }
  }
  std::vector<int> node_free(mesh.n_nodes, -1);
  int n_free = 0;
  for (int c : macro.cells) {
    for (int a = 0; a < mesh.nodes_per_cell(); ++a) {
      const int node = mesh.cell_nodes[c][a];
      if (node_free[node] >= 0) continue;
      const Point x = mesh.node_position(node);
      bool inside = true;
      for (int d = 0; d < dim; ++d) {
        inside = inside && x[d] > lo[d] + 1e-14 && x[d] < hi[d] - 1e-14;
      }
      if (inside) node_free[node] = n_free++;
    }
  }

  Mat a_uu = Mat::Zero(dim * n_free, dim * n_free);
  Mat a_up = Mat::Zero(dim * n_free, np);
  for (int lc = 0; lc < np; ++lc) {
    const int c = macro.cells[lc];
    const ElementMatrices em = elem_matrices(mesh.cell_extents(c), dim, material);
    for (int a = 0; a < mesh.nodes_per_cell(); ++a) {
      const int ia = node_free[mesh.cell_nodes[c][a]];
      if (ia < 0) continue;
      for (int ca = 0; ca < dim; ++ca) {
        a_up(dim * ia + ca, lc) += em.a_up(dim * a + ca);
        for (int b = 0; b < mesh.nodes_per_cell(); ++b) {
          const int ib = node_free[mesh.cell_nodes[c][b]];
          if (ib < 0) continue;
          for (int cb = 0; cb < dim; ++cb) {
            a_uu(dim * ia + ca, dim * ib + cb) += em.a_uu(dim * a + ca, dim * b + cb);
          }
        }
      }
    }
  }

  Mat b_p = Mat::Zero(np, np);
  std::vector<int> local_of_cell(mesh.n_cells, -1);
  for (int lc = 0; lc < np; ++lc) local_of_cell[macro.cells[lc]] = lc;
  const double w = beta * macro.measure;
  for (int f : macro.internal_faces) {
    const int k = local_of_cell[mesh.face_cells[f][0]];
    const int l = local_of_cell[mesh.face_cells[f][1]];
    b_p(k, k) += w;
    b_p(l, l) += w;
    b_p(k, l) -= w;
    b_p(l, k) -= w;
  }

  Eigen::LLT<Mat> llt(a_uu);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("clamped macro displacement block is singular");
  }
  b_p += a_up.transpose() * llt.solve(a_up);

  Eigen::SelfAdjointEigenSolver<Mat> es(b_p);
  return es.eigenvalues();
}

Mat dense_system_matrix(const BlockSystem& sys) {
  const int n = sys.total_dofs();
  Mat a = Mat::Zero(n, n);
  Vec x = Vec::Zero(n), y(n);
  for (int j = 0; j < n; ++j) {
    x(j) = 1.0;
    sys.apply(x, y);
    a.col(j) = y;
    x(j) = 0.0;
  }
  return a;
}

Mat dense_bp(const BlockSystem& sys) {
  Mat bp = Mat(sys.abar_diag.asDiagonal());
  if (sys.stabilized) bp += Mat(sys.a_stab);
  const Mat up = Mat(sys.a_up);
  Eigen::LLT<Mat> llt((Mat(sys.a_uu)));
  if (llt.info() != Eigen::Success) throw std::runtime_error("A_uu dense LLT failed");
  bp += up.transpose() * llt.solve(up);
  return bp;
}

Mat dense_ctilde_infinity(const BlockSystem& sys) {
  if (!(sys.dt > 0.0)) throw std::invalid_argument("needs dt > 0");
  const Vec delta = (sys.abar_diag - sys.app_diag) / sys.dt;
  const Mat ppi = Mat(sys.a_ppi);
  return Mat(sys.a_pipi) - ppi.transpose() * delta.cwiseInverse().asDiagonal() * ppi;
}

SpectralReport spectral_diagnostics(const BlockSystem& sys, const Mat& bp_tilde,
                                    int dense_limit) {
  if (sys.form != Formulation::Mhfe) {
    throw std::invalid_argument("spectral diagnostics target the hybrid system");
  }
  if (sys.total_dofs() > dense_limit) {
    throw std::invalid_argument("system exceeds the dense diagnostics limit");
  }
  const int nu = sys.n_u(), np = sys.n_p, npi = sys.n_flux();

  const Mat a = dense_system_matrix(sys);
  const Mat bp = dense_bp(sys);
  const Mat ppi = Mat(sys.a_ppi);
  const Mat pip = Mat(sys.a_pip);

  Eigen::PartialPivLU<Mat> bp_tilde_lu(bp_tilde);
  const Mat ctilde = Mat(sys.a_pipi) - sys.dt * (pip * bp_tilde_lu.solve(ppi));

  // Block upper-triangular preconditioner, dense.
  const int n = sys.total_dofs();
  Mat m = Mat::Zero(n, n);
  m.block(0, 0, nu, nu) = Mat(sys.a_uu);
  m.block(0, nu, nu, np) = Mat(sys.a_up);
  m.block(nu, nu, np, np) = bp_tilde;
  m.block(nu, nu + np, np, npi) = sys.dt * ppi;
  m.block(nu + np, nu + np, npi, npi) = ctilde;

  const Mat t = a * m.partialPivLu().inverse();

  SpectralReport rep;
  rep.n_expected = nu + npi - np;
  Eigen::EigenSolver<Mat> es(t);
  rep.t_eigenvalues.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> lam = es.eigenvalues()(i);
    rep.t_eigenvalues.push_back(lam);
    rep.max_t_deviation = std::max(rep.max_t_deviation, std::abs(lam - 1.0));
    if (std::abs(lam - 1.0) <= 1e-8) ++rep.n_unit;
  }
  rep.unit_multiplicity_ok = rep.n_unit >= rep.n_expected;

  // Z per the eigenvalue theorem, with E_p = B_p Btilde^{-1} - I.
  const Mat ep = bp * bp_tilde_lu.inverse() - Mat::Identity(np, np);
  Eigen::PartialPivLU<Mat> ct_lu(ctilde);
  Mat z = Mat::Zero(np + npi, np + npi);
  z.block(0, 0, np, np) = ep;
  z.block(0, np, np, npi) = -sys.dt * (ep * ct_lu.solve(pip).transpose());
  z.block(np, 0, npi, np) = pip * bp_tilde_lu.inverse();

  rep.eps = 0.5 * two_norm(ep);
  rep.gamma = two_norm(ppi * ct_lu.solve(pip * bp_tilde_lu.inverse()));
  rep.bound = rep.eps + std::sqrt(rep.eps * rep.eps + 2.0 * sys.dt * rep.gamma * rep.eps);

  Eigen::EigenSolver<Mat> ez(z);
  double worst = -1e300;
  for (int i = 0; i < z.rows(); ++i) {
    const std::complex<double> mu = ez.eigenvalues()(i);
    rep.z_eigenvalues.push_back(mu);
    worst = std::max(worst, std::abs(mu) - rep.bound);
  }
  rep.max_violation = worst;
  return rep;
}

SpectralReport spectral_diagnostics(const BlockSystem& sys, int dense_limit) {
  const Vec btilde = build_schur_btilde(sys);
  return spectral_diagnostics(sys, Mat(btilde.asDiagonal()), dense_limit);
}

}  // namespace poromix
