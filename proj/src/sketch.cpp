#include "xtrace/sketch.hpp"

#include <cmath>
#include <limits>

namespace xtrace {

ThinQr thin_qr(const Eigen::Ref<const Eigen::MatrixXd>& y) {
  const Index n = y.rows();
  const Index k = y.cols();
  if (k > n) {
    throw ContractViolation("thin_qr: more columns than rows");
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  ThinQr out;
  out.q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

NullspaceVectors nullspace_unit_vectors(
    const Eigen::Ref<const Eigen::MatrixXd>& r) {
  const Index k = r.rows();
  if (r.cols() != k) throw ContractViolation("nullspace: R must be square");
  for (Index i = 0; i < k; ++i) {
    if (r(i, i) == 0.0) {
      throw DegenerateInput("nullspace: exactly singular triangular factor");
    }
  }
  // Columns of (R^T)^{-1}, then normalized.
  Eigen::MatrixXd s = r.transpose().triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(k, k));
  NullspaceVectors out;
  out.d.resize(k);
  for (Index i = 0; i < k; ++i) {
    const double norm = s.col(i).norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      throw DegenerateInput("nullspace: non-finite triangular solve");
    }
    out.d[i] = 1.0 / norm;
    s.col(i) /= norm;
  }
  out.s = std::move(s);
  return out;
}

bool sketch_rank_deficient(const Eigen::Ref<const Eigen::MatrixXd>& r,
                           Index op_dim) {
  const Index k = std::min(r.rows(), r.cols());
  double max_diag = 0.0;
  for (Index i = 0; i < k; ++i) {
    max_diag = std::max(max_diag, std::abs(r(i, i)));
  }
  const double tol = static_cast<double>(op_dim) *
                     std::numeric_limits<double>::epsilon() * max_diag;
  for (Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) < tol) return true;
  }
  return max_diag == 0.0;
}

SketchState build_sketch(const Eigen::Ref<const Eigen::MatrixXd>& omega,
                         Eigen::MatrixXd y) {
  SketchState st;
  ThinQr qr = thin_qr(y);
  st.y = std::move(y);
  st.q = std::move(qr.q);
  st.r = std::move(qr.r);
  st.w.noalias() = st.q.transpose() * omega;
  NullspaceVectors ns = nullspace_unit_vectors(st.r);
  st.s = std::move(ns.s);
  st.d = std::move(ns.d);
  return st;
}

}  // namespace xtrace
