#ifndef POROMIX_DOF_HPP
#define POROMIX_DOF_HPP

#include "poromix/types.hpp"

#include <vector>

namespace poromix {

/// Free/fixed partition of one field's degrees of freedom. Free dofs keep
/// their relative (lexicographic) order.
struct FieldDofMap {
  int n_full = 0;
  std::vector<int> full_to_free;  // -1 where fixed
  std::vector<int> free_to_full;

  int n_free() const { return static_cast<int>(free_to_full.size()); }
  bool fixed(int full) const { return full_to_free[full] < 0; }
};

FieldDofMap make_dof_map(const std::vector<bool>& is_fixed);

/// Keeps entries with free row and column indices, remapped to free numbering.
SpMat restrict_block(const SpMat& a, const FieldDofMap& rows, const FieldDofMap& cols);
SpMat restrict_rows(const SpMat& a, const FieldDofMap& rows);
SpMat restrict_cols(const SpMat& a, const FieldDofMap& cols);

Vec gather_free(const Vec& full, const FieldDofMap& map);
/// Writes free values into a full-size vector, leaving fixed slots untouched.
void scatter_free(const Vec& free_vals, const FieldDofMap& map, Vec& full);

}  // namespace poromix

#endif
