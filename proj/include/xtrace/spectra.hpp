#ifndef XTRACE_SPECTRA_HPP
#define XTRACE_SPECTRA_HPP

#include <cstdint>

#include "xtrace/linop.hpp"
#include "xtrace/types.hpp"

namespace xtrace {

enum class SpectrumKind { Flat, Poly, Exp, Step };

SpectrumKind parse_spectrum(std::string_view name);
std::string_view to_string(SpectrumKind k);

// Synthetic eigenvalue profiles.  Defaults follow the benchmark instances:
//   flat: 3 - 2(i-1)/(N-1)          poly: i^-2
//   exp:  0.7^(i-1)                 step: 50 ones then 1e-3
struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::Exp;
  Index dim = 1000;

  double exp_decay = 0.7;
  double poly_exponent = 2.0;
  Index step_leading = 50;
  double step_height = 1.0;
  double step_tail = 1e-3;
  double flat_high = 3.0;
  double flat_low = 1.0;
};

// The eigenvalue vector, length dim, strictly positive.
Eigen::VectorXd spectrum_eigenvalues(const SpectrumSpec& spec);

// Haar-distributed random orthogonal matrix: orthogonalize a square
// standard-normal matrix and flip column signs so the triangular factor has
// a positive diagonal.  Deterministic given the seed.
Eigen::MatrixXd haar_orthogonal(Index n, std::uint64_t seed);

// A(lambda) = U diag(lambda) U^T with Haar random U.
DenseSpectralOperator make_synthetic_operator(const SpectrumSpec& spec,
                                              std::uint64_t seed);

}  // namespace xtrace

#endif
