#include "poromix/element.hpp"

#include <cmath>
#include <stdexcept>

namespace poromix {

namespace {

// 2-point Gauss rule on [0,1]; exact for all the box integrands below.
constexpr double kGaussA = 0.21132486540518711775;  // (1 - 1/sqrt(3))/2
constexpr double kGaussB = 0.78867513459481288225;

struct ShapeEval {
  // grads[a][c]: d N_a / d x_c at the quadrature point (physical coordinates)
  double grads[8][3];
};

ShapeEval q1_gradients(const std::array<double, 3>& h, int dim, const double* xi) {
  ShapeEval ev{};
  const int n_nodes = 1 << dim;
  for (int a = 0; a < n_nodes; ++a) {
    for (int c = 0; c < dim; ++c) {
      double g = 1.0;
      for (int k = 0; k < dim; ++k) {
        const bool high = (a >> k) & 1;
        const double line = high ? xi[k] : 1.0 - xi[k];
        const double dline = high ? 1.0 : -1.0;
        g *= (k == c) ? dline / h[k] : line;
      }
      ev.grads[a][c] = g;
    }
  }
  return ev;
}

}  // namespace

ElementMatrices elem_matrices(const std::array<double, 3>& extents, int dim,
                              const CellMaterial& mat) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  for (int a = 0; a < dim; ++a) {
    if (!(extents[a] > 0.0)) throw std::invalid_argument("degenerate cell extent");
  }
  validate_material(mat, dim);

  const int n_nodes = 1 << dim;
  const int n_udof = dim * n_nodes;
  const int n_faces = 2 * dim;
  const double g_mod = shear_modulus(mat);
  const double lambda = lame_lambda(mat);

  double vol = 1.0;
  for (int a = 0; a < dim; ++a) vol *= extents[a];

  ElementMatrices em;
  em.dim = dim;
  em.a_uu = Mat::Zero(n_udof, n_udof);
  em.a_up = Vec::Zero(n_udof);
  em.a_ww = Mat::Zero(n_faces, n_faces);
  em.a_wp = Vec::Zero(n_faces);
  em.a_wpi = Vec::Zero(n_faces);
  em.a_pp = mat.s_eps * vol;

  // Displacement blocks by tensor-product Gauss quadrature.
  const double pts[2] = {kGaussA, kGaussB};
  const int n_qp = 1 << dim;
  const double w_qp = vol / static_cast<double>(n_qp);
  for (int q = 0; q < n_qp; ++q) {
    double xi[3] = {pts[q & 1], pts[(q >> 1) & 1], pts[(q >> 2) & 1]};
    const ShapeEval ev = q1_gradients(extents, dim, xi);
    for (int a = 0; a < n_nodes; ++a) {
      for (int c = 0; c < dim; ++c) {
        const int i = dim * a + c;
        em.a_up(i) -= mat.b * ev.grads[a][c] * w_qp;
        for (int b2 = 0; b2 < n_nodes; ++b2) {
          double dot = 0.0;
          for (int k = 0; k < dim; ++k) dot += ev.grads[a][k] * ev.grads[b2][k];
          for (int f = 0; f < dim; ++f) {
            const int j = dim * b2 + f;
            double v = lambda * ev.grads[a][c] * ev.grads[b2][f] +
                       g_mod * ev.grads[a][f] * ev.grads[b2][c];
            if (c == f) v += g_mod * dot;
            em.a_uu(i, j) += v * w_qp;
          }
        }
      }
    }
  }

  // RT0 velocity blocks in closed form. Each axis pair decouples; with unit
  // outward normal velocity the pair mass matrix is
  // (mu |T| / kappa_a) [[1/3, -1/6], [-1/6, 1/3]].
  for (int a = 0; a < dim; ++a) {
    const double scale = mat.mu * vol / mat.kappa[a];
    em.a_ww(2 * a, 2 * a) = scale / 3.0;
    em.a_ww(2 * a + 1, 2 * a + 1) = scale / 3.0;
    em.a_ww(2 * a, 2 * a + 1) = -scale / 6.0;
    em.a_ww(2 * a + 1, 2 * a) = -scale / 6.0;
    const double area = vol / extents[a];
    em.a_wp(2 * a) = -area;
    em.a_wp(2 * a + 1) = -area;
    em.a_wpi(2 * a) = area;
    em.a_wpi(2 * a + 1) = area;
  }
  return em;
}

CondensedElement elem_condense(const ElementMatrices& em, double dt) {
  const int n = static_cast<int>(em.a_ww.rows());
  Eigen::LLT<Mat> llt(em.a_ww);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("elemental velocity mass matrix is not SPD");
  }
  const Vec winv_wp = llt.solve(em.a_wp);
  const Mat winv_wpi = llt.solve(Mat(em.a_wpi.asDiagonal()));

  CondensedElement ce;
  // abar_pp = a_pp - dt a_pw a_ww^{-1} a_wp with a_pw = -a_wp^T
  ce.abar_pp = em.a_pp + dt * em.a_wp.dot(winv_wp);
  // a_ppi = -a_pw a_ww^{-1} a_wpi = a_wp^T a_ww^{-1} diag(|e|)
  ce.a_ppi = (winv_wpi.transpose() * em.a_wp).transpose();
  // a_pipi = -a_piw a_ww^{-1} a_wpi = diag(|e|) a_ww^{-1} diag(|e|)
  ce.a_pipi = em.a_wpi.asDiagonal() * winv_wpi;
  ce.a_pipi = 0.5 * (ce.a_pipi + ce.a_pipi.transpose()).eval();
  (void)n;
  return ce;
}

double face_shape_integral(const std::array<double, 3>& extents, int dim, int axis) {
  double area = 1.0;
  for (int a = 0; a < dim; ++a) {
    if (a != axis) area *= extents[a];
  }
  return area / static_cast<double>(1 << (dim - 1));
}

}  // namespace poromix
