#include "poromix/sparse_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace poromix {

void write_matrix_market(const SpMat& a, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  std::fprintf(fp, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(fp, "%ld %ld %ld\n", static_cast<long>(a.rows()), static_cast<long>(a.cols()),
               static_cast<long>(a.nonZeros()));
  for (int r = 0; r < a.outerSize(); ++r) {
    for (SpMat::InnerIterator it(a, r); it; ++it) {
      std::fprintf(fp, "%ld %ld %.17g\n", static_cast<long>(it.row() + 1),
                   static_cast<long>(it.col() + 1), it.value());
    }
  }
  std::fclose(fp);
}

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0) {
    throw std::runtime_error("missing MatrixMarket header in " + path);
  }
  if (line.find("coordinate") == std::string::npos ||
      line.find("real") == std::string::npos) {
    throw std::runtime_error("unsupported MatrixMarket flavor in " + path);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz)) throw std::runtime_error("bad size line in " + path);
  }
  std::vector<Triplet> trips;
  trips.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    long r (0), c(0);
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw std::runtime_error("truncated entries in " + path);
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw std::runtime_error("entry out of range in " + path);
    }
    trips.emplace_back(static_cast<int>(r - 1), static_cast<int>(c - 1), v);
  }
  SpMat a(rows, cols);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace poromix
