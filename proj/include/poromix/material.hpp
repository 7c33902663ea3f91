#ifndef POROMIX_MATERIAL_HPP
#define POROMIX_MATERIAL_HPP

#include <array>
#include <vector>

namespace poromix {

/// Per-cell physical parameters of an isotropic poroelastic medium with a
/// diagonal permeability tensor.
struct CellMaterial {
  double E = 0.0;                          // Young's modulus [Pa]
  double nu = 0.0;                         // Poisson's ratio
  double b = 1.0;                          // Biot coefficient
  double s_eps = 0.0;                      // constrained specific storage [1/Pa]
  std::array<double, 3> kappa = {0, 0, 0}; // permeability per axis [m^2]
  double mu = 0.0;                         // fluid viscosity [Pa s]
};

/// Throws std::invalid_argument on out-of-range parameters
/// (E>0, 0<=nu<0.5, 0<=b<=1, s_eps>=0, kappa>0, mu>0).
void validate_material(const CellMaterial& m, int dim);

inline double shear_modulus(const CellMaterial& m) { return m.E / (2.0 * (1.0 + m.nu)); }

inline double lame_lambda(const CellMaterial& m) {
  return m.E * m.nu / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu));
}

/// Macro-element stabilization coefficient [1/Pa] from the Lame parameters:
/// (b/2)^2/(2G+lambda) in 2D, (3b)^2/(32(lambda+4G)) in 3D.
double stabilization_beta(double shear_g, double lambda, double biot_b, int dim);
double stabilization_beta(const CellMaterial& m, int dim);

/// Arithmetic mean of (G, lambda, b) over a group of cells, then the closed
/// form; used for macro-elements with heterogeneous members.
double stabilization_beta_mean(const std::vector<CellMaterial>& materials,
                               const std::vector<int>& cells, int dim);

}  // namespace poromix

#endif
