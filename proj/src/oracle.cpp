#include "xtrace/oracle.hpp"

#include <cmath>
#include <limits>

#include "xtrace/estimators.hpp"
#include "xtrace/sketch.hpp"
#include "xtrace/summation.hpp"

namespace xtrace::oracle {

namespace {

constexpr Index kDensifyCap = 512;

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& m, Index i) {
  Eigen::MatrixXd out(m.rows(), m.cols() - 1);
  out.leftCols(i) = m.leftCols(i);
  out.rightCols(m.cols() - 1 - i) = m.rightCols(m.cols() - 1 - i);
  return out;
}

Eigen::MatrixXd orth(const Eigen::MatrixXd& y) { return thin_qr(y).q; }

TraceReport reduce(std::vector<double> per_sample, Index matvecs) {
  TraceReport rep;
  rep.estimate = compensated_mean(per_sample);
  if (per_sample.size() >= 2) rep.err_est = error_estimate(per_sample);
  rep.per_sample = std::move(per_sample);
  rep.matvecs_used = matvecs;
  return rep;
}

}  // namespace

TraceReport xtrace_naive(const LinearOperator& op, const TestMatrix& tm,
                         bool normalize) {
  const Index n = op.dim();
  const Index k = tm.cols();
  if (k < 2) throw ContractViolation("xtrace_naive: needs >= 2 vectors");
  const Eigen::MatrixXd a = densify(op, kDensifyCap);
  const Eigen::MatrixXd y = a * tm.omega;

  std::vector<double> per_sample(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Eigen::MatrixXd qi = orth(drop_column(y, i));
    const Eigen::MatrixXd aqi = a * qi;
    const double low_rank = qi.cwiseProduct(aqi).sum();

    const Eigen::VectorXd w = tm.omega.col(i);
    Eigen::VectorXd mu = w - qi * (qi.transpose() * w);
    double residual;
    if (normalize) {
      const double target =
          std::sqrt(static_cast<double>(n - (k - 1)));
      const Eigen::VectorXd nu = target * mu / mu.norm();
      residual = nu.dot(a * nu);
    } else {
      residual = mu.dot(a * mu);
    }
    per_sample[static_cast<std::size_t>(i)] = low_rank + residual;
  }
  return reduce(std::move(per_sample), 2 * k);
}

TraceReport xnystrace_naive(const LinearOperator& op, const TestMatrix& tm,
                            bool normalize) {
  const Index n = op.dim();
  const Index k = tm.cols();
  if (k < 2) throw ContractViolation("xnystrace_naive: needs >= 2 vectors");
  const Eigen::MatrixXd a = densify(op, kDensifyCap);
  const Eigen::MatrixXd y = a * tm.omega;

  std::vector<double> per_sample(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Eigen::MatrixXd yi = drop_column(y, i);
    const Eigen::MatrixXd oi = drop_column(tm.omega, i);
    // A_i = Y_-i (Omega_-i^T Y_-i)^+ Y_-i^T with the pseudoinverse cutoff
    // at k * eps * sigma_max.
    const Eigen::MatrixXd gram = oi.transpose() * yi;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double cutoff = static_cast<double>(gram.rows()) *
                          std::numeric_limits<double>::epsilon() *
                          svd.singularValues()[0];
    Eigen::VectorXd inv_sv = svd.singularValues();
    for (Index j = 0; j < inv_sv.size(); ++j) {
      inv_sv[j] = inv_sv[j] > cutoff ? 1.0 / inv_sv[j] : 0.0;
    }
    const Eigen::MatrixXd pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
    const Eigen::MatrixXd nys = yi * pinv * yi.transpose();

    const Eigen::VectorXd w = tm.omega.col(i);
    double residual;
    if (normalize) {
      const Eigen::MatrixXd pi = orth(oi);
      Eigen::VectorXd mu = w - pi * (pi.transpose() * w);
      const Eigen::VectorXd nu =
          std::sqrt(static_cast<double>(n - (k - 1))) * mu / mu.norm();
      residual = nu.dot(a * nu) - nu.dot(nys * nu);
    } else {
      residual = w.dot(a * w) - w.dot(nys * w);
    }
    per_sample[static_cast<std::size_t>(i)] = nys.trace() + residual;
  }
  return reduce(std::move(per_sample), k);
}

DiagReport xdiag_naive(const LinearOperator& op, const TestMatrix& tm) {
  const Index k = tm.cols();
  if (k < 2) throw ContractViolation("xdiag_naive: needs >= 2 vectors");
  const Eigen::MatrixXd a = densify(op, kDensifyCap);
  const Eigen::MatrixXd y = a * tm.omega;

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(op.dim());
  for (Index i = 0; i < k; ++i) {
    const Eigen::MatrixXd qi = orth(drop_column(y, i));
    // diag(Q_i (Q_i^T A)) entry by entry.
    const Eigen::MatrixXd atqi = a.transpose() * qi;
    const Eigen::VectorXd low_rank = qi.cwiseProduct(atqi).rowwise().sum();

    const Eigen::VectorXd w = tm.omega.col(i);
    const Eigen::VectorXd aw = y.col(i);
    const Eigen::VectorXd proj_residual = aw - qi * (qi.transpose() * aw);
    const Eigen::VectorXd ratio = (w.array() * proj_residual.array() /
                                   (w.array() * w.array()))
                                      .matrix();
    acc += low_rank + ratio;
  }
  DiagReport rep;
  rep.estimate = acc / static_cast<double>(k);
  rep.matvecs_used = k;
  rep.adjoint_matvecs_used = k;
  return rep;
}

}  // namespace xtrace::oracle
