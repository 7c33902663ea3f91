#include "poromix/dof.hpp"

namespace poromix {

FieldDofMap make_dof_map(const std::vector<bool>& is_fixed) {
  FieldDofMap map;
  map.n_full = static_cast<int>(is_fixed.size());
  map.full_to_free.assign(map.n_full, -1);
  for (int i = 0; i < map.n_full; ++i) {
    if (!is_fixed[i]) {
      map.full_to_free[i] = static_cast<int>(map.free_to_full.size());
      map.free_to_full.push_back(i);
    }
  }
  return map;
}

SpMat restrict_block(const SpMat& a, const FieldDofMap& rows, const FieldDofMap& cols) {
  std::vector<Triplet> trips;
  trips.reserve(a.nonZeros());
  for (int r = 0; r < a.outerSize(); ++r) {
    const int rr = rows.full_to_free[r];
    if (rr < 0) continue;
    for (SpMat::InnerIterator it(a, r); it; ++it) {
      const int cc = cols.full_to_free[it.col()];
      if (cc >= 0) trips.emplace_back(rr, cc, it.value());
    }
  }
  SpMat out(rows.n_free(), cols.n_free());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

namespace {
FieldDofMap identity_map(int n) {
  FieldDofMap map;
  map.n_full = n;
  map.full_to_free.resize(n);
  map.free_to_full.resize(n);
  for (int i = 0; i < n; ++i) map.full_to_free[i] = map.free_to_full[i] = i;
  return map;
}
}  // namespace

SpMat restrict_rows(const SpMat& a, const FieldDofMap& rows) {
  return restrict_block(a, rows, identity_map(static_cast<int>(a.cols())));
}

SpMat restrict_cols(const SpMat& a, const FieldDofMap& cols) {
  return restrict_block(a, identity_map(static_cast<int>(a.rows())), cols);
}

Vec gather_free(const Vec& full, const FieldDofMap& map) {
  Vec out(map.n_free());
  for (int i = 0; i < map.n_free(); ++i) out(i) = full(map.free_to_full[i]);
  return out;
}

void scatter_free(const Vec& free_vals, const FieldDofMap& map, Vec& full) {
  for (int i = 0; i < map.n_free(); ++i) full(map.free_to_full[i]) = free_vals(i);
}

}  // namespace poromix
