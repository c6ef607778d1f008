#ifndef XTRACE_ESTIMATORS_HPP
#define XTRACE_ESTIMATORS_HPP

#include <cstdint>
#include <span>

#include "xtrace/linop.hpp"
#include "xtrace/sampling.hpp"
#include "xtrace/sketch.hpp"
#include "xtrace/types.hpp"

namespace xtrace {

// Posterior error estimate: sample standard error of the basic estimates,
//   sqrt( sum (t_i - mean)^2 / (l (l-1)) ).
// Requires at least two samples.
double error_estimate(std::span<const double> per_sample);

// Girard-Hutchinson: mean of the quadratic forms w_i^T (A w_i).
// Budget: exactly m matvecs.
TraceReport hutch(const LinearOperator& op, Index m, Distribution dist,
                  std::uint64_t seed);
TraceReport hutch(const LinearOperator& op, const TestMatrix& tm);

// Trace of the rank-(m/2) randomized SVD approximation (biased surrogate).
// Budget: m matvecs (m/2 sketch, m/2 for A Q); m must be even.
TraceReport lra_trace(const LinearOperator& op, Index m, Distribution dist,
                      std::uint64_t seed);
TraceReport lra_trace(const LinearOperator& op, const TestMatrix& tm);

// Hutch++: exact trace of a rank-(m/3) approximation plus Girard-Hutchinson
// on the residual, with disjoint test vectors.  m must be divisible by 3.
// The test matrix holds the m/3 residual vectors first, then the m/3 sketch
// vectors.
TraceReport hutchpp(const LinearOperator& op, Index m, Distribution dist,
                    std::uint64_t seed);
TraceReport hutchpp(const LinearOperator& op, const TestMatrix& tm);

// XTrace: exchangeable leave-one-out version of Hutch++ for square
// matrices, evaluated through the shared-QR downdate identities in
// O(m^2 N) after m matvecs.  m must be even and >= 4.  When `normalize` is
// set the residual test vector is rescaled to length sqrt(N - rank) in the
// leave-one-out complement.
TraceReport xtrace(const LinearOperator& op, Index m, Distribution dist,
                   bool normalize, std::uint64_t seed);
TraceReport xtrace(const LinearOperator& op, const TestMatrix& tm,
                   bool normalize);

// XNysTrace: exchangeable leave-one-out Nystrom estimator for psd
// operators; m matvecs total, no second sketch pass.
TraceReport xnystrace(const LinearOperator& op, Index m, Distribution dist,
                      bool normalize, std::uint64_t seed);
TraceReport xnystrace(const LinearOperator& op, const TestMatrix& tm,
                      bool normalize);

// Nystrom++ baseline: rank-(m/2) Nystrom approximation plus
// Girard-Hutchinson on the residual with m/2 fresh vectors.  The m/2 + m/2
// split is a reconstruction of the published baseline.  Test matrix layout:
// sketch vectors first, residual vectors second.
TraceReport nystrompp(const LinearOperator& op, Index m, Distribution dist,
                      std::uint64_t seed);
TraceReport nystrompp(const LinearOperator& op, const TestMatrix& tm);

// BKS entrywise-ratio diagonal estimator.
DiagReport bks_diag(const LinearOperator& op, Index m, Distribution dist,
                    std::uint64_t seed);
DiagReport bks_diag(const LinearOperator& op, const TestMatrix& tm);

// XDiag: exchangeable leave-one-out diagonal estimator.  Uses sign test
// vectors; budget is m/2 forward plus m/2 adjoint matvecs (m operator
// applications total).  m must be even and >= 4.
DiagReport xdiag(const LinearOperator& op, Index m, std::uint64_t seed);
DiagReport xdiag(const LinearOperator& op, const TestMatrix& tm);

namespace detail {

// Leave-one-out evaluations on precomputed factors; the adaptive driver
// reuses cached matvecs and calls these directly.
TraceReport xtrace_from_parts(Index n, const Eigen::MatrixXd& omega,
                              const SketchState& st, const Eigen::MatrixXd& z,
                              bool normalize, Index matvecs_used);
TraceReport xnystrace_from_parts(Index n, const Eigen::MatrixXd& omega,
                                 const Eigen::MatrixXd& y, bool normalize,
                                 Index matvecs_used);

}  // namespace detail

}  // namespace xtrace

#endif
