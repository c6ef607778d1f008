#ifndef XTRACE_SKETCH_HPP
#define XTRACE_SKETCH_HPP

#include "xtrace/types.hpp"

namespace xtrace {

struct ThinQr {
  Eigen::MatrixXd q;  // N x k, orthonormal columns
  Eigen::MatrixXd r;  // k x k, upper triangular
};

// Householder thin QR; requires rows >= cols.
ThinQr thin_qr(const Eigen::Ref<const Eigen::MatrixXd>& y);

struct NullspaceVectors {
  Eigen::MatrixXd s;  // k x k; column i is a unit null vector of R_{-i}^T
  Eigen::VectorXd d;  // positive normalizers, R^T S = diag(d)
};

// Simultaneous null-space vectors for all column deletions of a triangular
// factor: S = (R^T)^{-1} D with unit columns and D_ii > 0.  Costs k
// triangular solves.  Throws DegenerateInput when R is exactly singular.
NullspaceVectors nullspace_unit_vectors(
    const Eigen::Ref<const Eigen::MatrixXd>& r);

// Numerical rank-deficiency test used by the normalized estimators: some
// diagonal entry of R falls below op_dim * eps * max |diag|.
bool sketch_rank_deficient(const Eigen::Ref<const Eigen::MatrixXd>& r,
                           Index op_dim);

// Shared factorization data behind the leave-one-out estimators.
struct SketchState {
  Eigen::MatrixXd y;  // A Omega
  Eigen::MatrixXd q;  // orth(Y)
  Eigen::MatrixXd r;  // Y = Q R
  Eigen::MatrixXd w;  // Q^T Omega
  Eigen::MatrixXd s;  // null-space unit vectors
  Eigen::VectorXd d;  // normalizers
};

SketchState build_sketch(const Eigen::Ref<const Eigen::MatrixXd>& omega,
                         Eigen::MatrixXd y);

}  // namespace xtrace

#endif
