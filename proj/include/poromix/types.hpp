#ifndef POROMIX_TYPES_HPP
#define POROMIX_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <functional>
#include <vector>

namespace poromix {

// Compressed row storage throughout; column-major copies are made only where a
// factorization backend requires them.
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SpMatCol = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using Triplet = Eigen::Triplet<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using Point = std::array<double, 3>;

/// Scalar boundary/source datum as a function of position and time.
using ScalarFn = std::function<double(const Point&, double)>;
/// Vector-valued datum (displacement, traction) as a function of position and time.
using VectorFn = std::function<std::array<double, 3>(const Point&, double)>;

inline ScalarFn constant_scalar(double v) {
  return [v](const Point&, double) { return v; };
}

inline VectorFn constant_vector(double x, double y, double z) {
  return [x, y, z](const Point&, double) { return std::array<double, 3>{x, y, z}; };
}

inline VectorFn zero_vector() { return constant_vector(0.0, 0.0, 0.0); }

}  // namespace poromix

#endif
