#include "poromix/material.hpp"

#include <stdexcept>

namespace poromix {

void validate_material(const CellMaterial& m, int dim) {
  if (!(m.E > 0.0)) throw std::invalid_argument("Young's modulus must be > 0");
  if (!(m.nu >= 0.0 && m.nu < 0.5)) throw std::invalid_argument("Poisson's ratio must be in [0, 0.5)");
  if (!(m.b >= 0.0 && m.b <= 1.0)) throw std::invalid_argument("Biot coefficient must be in [0, 1]");
  if (!(m.s_eps >= 0.0)) throw std::invalid_argument("specific storage must be >= 0");
  if (!(m.mu > 0.0)) throw std::invalid_argument("fluid viscosity must be > 0");
  for (int a = 0; a < dim; ++a) {
    if (!(m.kappa[a] > 0.0)) throw std::invalid_argument("permeability must be > 0");
  }
}

double stabilization_beta(double shear_g, double lambda, double biot_b, int dim) {
  if (dim == 2) {
    return (biot_b / 2.0) * (biot_b / 2.0) / (2.0 * shear_g + lambda);
  }
  return (3.0 * biot_b) * (3.0 * biot_b) / (32.0 * (lambda + 4.0 * shear_g));
}

double stabilization_beta(const CellMaterial& m, int dim) {
  return stabilization_beta(shear_modulus(m), lame_lambda(m), m.b, dim);
}

double stabilization_beta_mean(const std::vector<CellMaterial>& materials,
                               const std::vector<int>& cells, int dim) {
  double g = 0.0, lambda = 0.0, b = 0.0;
  for (int c : cells) {
    g += shear_modulus(materials[c]);
    lambda += lame_lambda(materials[c]);
    b += materials[c].b;
  }
  const double inv = 1.0 / static_cast<double>(cells.size());
  return stabilization_beta(g * inv, lambda * inv, b * inv, dim);
}

}  // namespace poromix
