#include "poromix/factor.hpp"

namespace poromix {

SpdFactor::SpdFactor(const SpMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  SpMatCol acol(a);
  llt_ = std::make_shared<Eigen::SimplicialLLT<SpMatCol>>();
  llt_->compute(acol);
  if (llt_->info() != Eigen::Success) {
    throw NotSpdError("sparse Cholesky failed: matrix is not SPD");
  }
}

Vec SpdFactor::solve(const Vec& b) const { return llt_->solve(b); }

InnerSolver::InnerSolver(const SpMat& a, InnerKind kind, double rtol, int max_it)
    : kind_(kind), rtol_(rtol), max_it_(max_it) {
  if (kind_ == InnerKind::Direct) {
    direct_ = std::make_shared<SpdFactor>(a);
  } else {
    mat_ = std::make_shared<SpMat>(a);
    inv_diag_ = a.diagonal().cwiseInverse();
  }
}

Vec InnerSolver::solve(const Vec& b) const {
  if (kind_ == InnerKind::Direct) return direct_->solve(b);

  // Jacobi-preconditioned CG.
  const SpMat& a = *mat_;
  Vec x = Vec::Zero(b.size());
  Vec r = b;
  Vec z = inv_diag_.cwiseProduct(r);
  Vec p = z;
  double rz = r.dot(z);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  for (int it = 0; it < max_it_; ++it) {
    const Vec ap = a * p;
    const double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    if (r.norm() <= rtol_ * bnorm) break;
    z = inv_diag_.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return x;
}

}  // namespace poromix
