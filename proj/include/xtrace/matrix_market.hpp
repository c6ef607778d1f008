#ifndef XTRACE_MATRIX_MARKET_HPP
#define XTRACE_MATRIX_MARKET_HPP

#include <string>

#include "xtrace/types.hpp"

namespace xtrace {

// Reads a MatrixMarket coordinate file (pattern or real entries, general or
// symmetric storage) into a dense square matrix.  Symmetric storage is
// expanded to both triangles; pattern entries become unit weights, which is
// the adjacency-matrix convention used by the graph benchmarks.
// Throws IoError with a line diagnostic on malformed input.
Eigen::MatrixXd read_matrix_market(const std::string& path);

}  // namespace xtrace

#endif
