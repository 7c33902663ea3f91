#include "poromix/gmres.hpp"

#include <chrono>
#include <cmath>

namespace poromix {

Vec gmres(const LinOp& apply_a, const LinOp& apply_m, const Vec& b, double tol,
          int max_it, SolverReport& report) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(b.size());
  report = SolverReport{};

  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    report.converged = true;
    report.res_history = {0.0};
    return Vec::Zero(n);
  }

  std::vector<Vec> basis;
  basis.push_back(b / bnorm);

  Mat hess = Mat::Zero(max_it + 1, max_it);
  std::vector<double> cos_g, sin_g;
  Vec g = Vec::Zero(max_it + 1);
  g(0) = bnorm;

  report.res_history.push_back(1.0);
  Vec w(n), mz(n);
  int k = 0;
  while (k < max_it) {
    apply_m(basis[k], mz);
    apply_a(mz, w);

    // Modified Gram-Schmidt.
    for (int i = 0; i <= k; ++i) {
      hess(i, k) = w.dot(basis[i]);
      w -= hess(i, k) * basis[i];
    }
    const double h_sub = w.norm();

    // Previous Givens rotations on the new column, then a new rotation.
    for (int i = 0; i < k; ++i) {
      const double tmp = cos_g[i] * hess(i, k) + sin_g[i] * hess(i + 1, k);
      hess(i + 1, k) = -sin_g[i] * hess(i, k) + cos_g[i] * hess(i + 1, k);
      hess(i, k) = tmp;
    }
    const double denom = std::hypot(hess(k, k), h_sub);
    const double c = denom > 0.0 ? hess(k, k) / denom : 1.0;
    const double s = denom > 0.0 ? h_sub / denom : 0.0;
    cos_g.push_back(c);
    sin_g.push_back(s);
    hess(k, k) = denom;
    g(k + 1) = -s * g(k);
    g(k) = c * g(k);

    ++k;
    const double rel = std::abs(g(k)) / bnorm;
    report.res_history.push_back(rel);
    if (rel <= tol) {
      report.converged = true;
      break;
    }
    if (h_sub == 0.0) break;  // breakdown: solution already in the space
    basis.push_back(w / h_sub);
  }

  report.n_it = k;

  // Back substitution on the triangularized least-squares system.
  Vec y = Vec::Zero(k);
  for (int i = k - 1; i >= 0; --i) {
    double sum = g(i);
    for (int j = i + 1; j < k; ++j) sum -= hess(i, j) * y(j);
    y(i) = hess(i, i) != 0.0 ? sum / hess(i, i) : 0.0;
  }
  Vec xk = Vec::Zero(n);
  for (int i = 0; i < k; ++i) xk += y(i) * basis[i];
  Vec x(n);
  apply_m(xk, x);

  report.t_solve =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.t_total = report.t_prec + report.t_solve;
  return x;
}

}  // namespace poromix
