#ifndef XTRACE_TEST_HELPERS_HPP
#define XTRACE_TEST_HELPERS_HPP

#include <cstdint>

#include "xtrace/linop.hpp"
#include "xtrace/spectra.hpp"

namespace xthelp {

using xtrace::Index;

// Rank-r psd instance with eigenvalues r, r-1, ..., 1 and a Haar basis.
inline xtrace::DenseSpectralOperator rank_r_psd(Index n, Index r,
                                                std::uint64_t seed) {
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < r; ++i) lam[i] = static_cast<double>(r - i);
  return xtrace::DenseSpectralOperator(xtrace::haar_orthogonal(n, seed),
                                       lam);
}

inline xtrace::DenseSpectralOperator exp_instance(Index n,
                                                  std::uint64_t seed) {
  xtrace::SpectrumSpec spec;
  spec.kind = xtrace::SpectrumKind::Exp;
  spec.dim = n;
  return xtrace::make_synthetic_operator(spec, seed);
}

// Rank-r orthogonal projector Q Q^T (psd, eigenvalues in {0, 1}).
inline xtrace::DenseSpectralOperator projector(Index n, Index r,
                                               std::uint64_t seed) {
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
  lam.head(r).setOnes();
  return xtrace::DenseSpectralOperator(xtrace::haar_orthogonal(n, seed), lam);
}

}  // namespace xthelp

#endif
