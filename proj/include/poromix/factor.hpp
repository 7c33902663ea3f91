#ifndef POROMIX_FACTOR_HPP
#define POROMIX_FACTOR_HPP

#include "poromix/types.hpp"

#include <memory>
#include <stdexcept>

namespace poromix {

struct NotSpdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse Cholesky factorization of an SPD matrix with fill-reducing (AMD)
/// ordering. Throws NotSpdError if a non-positive pivot is met. Immutable
/// after construction; concurrent solves are safe.
class SpdFactor {
 public:
  explicit SpdFactor(const SpMat& a);
  Vec solve(const Vec& b) const;
  int rows() const { return static_cast<int>(llt_->rows()); }

 private:
  std::shared_ptr<Eigen::SimplicialLLT<SpMatCol>> llt_;
};

enum class InnerKind { Direct, Cg };

/// Inner solve used inside the block preconditioner: exact sparse direct
/// solve, or Jacobi-preconditioned CG as a cheaper inexact option.
class InnerSolver {
 public:
  InnerSolver() = default;
  InnerSolver(const SpMat& a, InnerKind kind, double rtol = 1e-10, int max_it = 1000);
  Vec solve(const Vec& b) const;

 private:
  InnerKind kind_ = InnerKind::Direct;
  std::shared_ptr<SpdFactor> direct_;
  std::shared_ptr<SpMat> mat_;
  Vec inv_diag_;
  double rtol_ = 1e-10;
  int max_it_ = 1000;
};

}  // namespace poromix

#endif
