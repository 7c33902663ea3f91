#ifndef POROMIX_SPARSE_IO_HPP
#define POROMIX_SPARSE_IO_HPP

#include "poromix/types.hpp"

#include <string>

namespace poromix {

/// Writes a sparse matrix in Matrix Market coordinate format (1-based,
/// general, row-sorted). Deterministic output for identical input.
void write_matrix_market(const SpMat& a, const std::string& path);

SpMat read_matrix_market(const std::string& path);

}  // namespace poromix

#endif
