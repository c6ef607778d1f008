#include "xtrace/linop.hpp"

#include <cmath>

#include "xtrace/summation.hpp"

namespace xtrace {

LinearOperator::LinearOperator(Index dim, bool symmetric, bool psd)
    : dim_(dim), symmetric_(symmetric), psd_(psd) {
  if (dim < 1) throw ContractViolation("operator dimension must be positive");
}

void LinearOperator::check_block(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.rows() != dim_) {
    throw ContractViolation("operator of dimension " + std::to_string(dim_) +
                            " applied to a block with " +
                            std::to_string(x.rows()) + " rows");
  }
  if (x.cols() < 1) throw ContractViolation("empty block application");
  if (!x.allFinite()) {
    throw ContractViolation("block application with non-finite entries");
  }
}

Eigen::MatrixXd LinearOperator::apply(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  check_block(x);
  Eigen::MatrixXd y(x.rows(), x.cols());
  apply_impl(x, y);
  matvecs_.fetch_add(x.cols());
  return y;
}

Eigen::MatrixXd LinearOperator::apply_adjoint(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  check_block(x);
  Eigen::MatrixXd y(x.rows(), x.cols());
  apply_adjoint_impl(x, y);
  adjoint_matvecs_.fetch_add(x.cols());
  return y;
}

void LinearOperator::apply_adjoint_impl(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    Eigen::Ref<Eigen::MatrixXd> y) const {
  if (!symmetric_) {
    throw ContractViolation(
        "operator has no adjoint application and is not marked symmetric");
  }
  apply_impl(x, y);
}

Eigen::MatrixXd densify(const LinearOperator& op, Index max_dim) {
  const Index n = op.dim();
  if (n > max_dim) {
    throw ContractViolation("operator too large to densify: dim " +
                            std::to_string(n) + " > " +
                            std::to_string(max_dim));
  }
  Eigen::MatrixXd dense(n, n);
  op.apply_impl(Eigen::MatrixXd::Identity(n, n), dense);
  return dense;
}

double exact_trace(const LinearOperator& op) {
  if (auto t = op.exact_trace_hint()) return *t;
  return densify(op).trace();
}

Eigen::VectorXd exact_diag(const LinearOperator& op) {
  if (auto d = op.exact_diag_hint()) return *d;
  return densify(op).diagonal();
}

// ---------------------------------------------------------------------------

namespace {

bool matrix_is_symmetric(const Eigen::MatrixXd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXd a, bool psd)
    : LinearOperator(a.rows(), matrix_is_symmetric(a), psd), a_(std::move(a)) {
  if (a_.rows() != a_.cols()) {
    throw ContractViolation("dense operator requires a square matrix");
  }
  if (psd && !symmetric_hint()) {
    throw ContractViolation("a psd operator must be symmetric");
  }
}

void DenseOperator::apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                               Eigen::Ref<Eigen::MatrixXd> y) const {
  y.noalias() = a_ * x;
}

void DenseOperator::apply_adjoint_impl(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    Eigen::Ref<Eigen::MatrixXd> y) const {
  y.noalias() = a_.transpose() * x;
}

std::optional<double> DenseOperator::exact_trace_hint() const {
  return a_.trace();
}

std::optional<Eigen::VectorXd> DenseOperator::exact_diag_hint() const {
  return Eigen::VectorXd(a_.diagonal());
}

// ---------------------------------------------------------------------------

DiagonalOperator::DiagonalOperator(Eigen::VectorXd d)
    : LinearOperator(d.size(), true, (d.array() >= 0.0).all()),
      d_(std::move(d)) {}

void DiagonalOperator::apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                  Eigen::Ref<Eigen::MatrixXd> y) const {
  y = d_.asDiagonal() * x;
}

std::optional<double> DiagonalOperator::exact_trace_hint() const {
  CompensatedSum acc;
  for (Index i = 0; i < d_.size(); ++i) acc.add(d_[i]);
  return acc.value();
}

std::optional<Eigen::VectorXd> DiagonalOperator::exact_diag_hint() const {
  return d_;
}

DiagonalOperator identity_operator(Index n) {
  return DiagonalOperator(Eigen::VectorXd::Ones(n));
}

// ---------------------------------------------------------------------------

namespace {

void check_orthonormal(const Eigen::MatrixXd& u) {
  const Index n = u.rows();
  if (u.cols() != n) {
    throw ContractViolation("eigenbasis must be square");
  }
  const double defect =
      (u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * std::max<double>(1.0, static_cast<double>(n))) {
    throw ContractViolation("eigenbasis is not orthogonal to tolerance");
  }
}

}  // namespace

DenseSpectralOperator::DenseSpectralOperator(Eigen::MatrixXd eigenbasis,
                                             Eigen::VectorXd eigenvalues)
    : DenseSpectralOperator(
          std::make_shared<const Eigen::MatrixXd>(std::move(eigenbasis)),
          std::move(eigenvalues)) {}

DenseSpectralOperator::DenseSpectralOperator(
    std::shared_ptr<const Eigen::MatrixXd> eigenbasis,
    Eigen::VectorXd eigenvalues)
    : LinearOperator(eigenbasis ? eigenbasis->rows() : 0, true,
                     (eigenvalues.array() >= 0.0).all()),
      u_(std::move(eigenbasis)),
      lambda_(std::move(eigenvalues)) {
  check_orthonormal(*u_);
  if (lambda_.size() != u_->rows()) {
    throw ContractViolation("eigenvalue count does not match dimension");
  }
}

const Eigen::MatrixXd& DenseSpectralOperator::dense() const {
  std::call_once(dense_once_, [this] {
    dense_.noalias() = (*u_) * lambda_.asDiagonal() * u_->transpose();
  });
  return dense_;
}

void DenseSpectralOperator::apply_impl(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    Eigen::Ref<Eigen::MatrixXd> y) const {
  y.noalias() = dense() * x;
}

std::optional<double> DenseSpectralOperator::exact_trace_hint() const {
  CompensatedSum acc;
  for (Index i = 0; i < lambda_.size(); ++i) acc.add(lambda_[i]);
  return acc.value();
}

std::optional<Eigen::VectorXd> DenseSpectralOperator::exact_diag_hint() const {
  // diag(U diag(lambda) U^T)_j = sum_l U_jl^2 lambda_l
  return Eigen::VectorXd(u_->array().square().matrix() * lambda_);
}

DenseSpectralOperator make_function_operator(
    const DenseSpectralOperator& base,
    const std::function<double(double)>& f) {
  Eigen::VectorXd mapped = base.eigenvalues().unaryExpr(f);
  return DenseSpectralOperator(base.shared_eigenbasis(), std::move(mapped));
}

DenseSpectralOperator make_function_operator(
    const Eigen::Ref<const Eigen::MatrixXd>& symmetric_base,
    const std::function<double(double)>& f) {
  if (symmetric_base.rows() != symmetric_base.cols()) {
    throw ContractViolation("matrix function requires a square base");
  }
  if (!matrix_is_symmetric(symmetric_base)) {
    throw ContractViolation("matrix function requires a symmetric base");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_base);
  if (es.info() != Eigen::Success) {
    throw DegenerateInput("symmetric eigendecomposition failed");
  }
  return DenseSpectralOperator(es.eigenvectors(),
                               es.eigenvalues().unaryExpr(f));
}

// ---------------------------------------------------------------------------

CallbackOperator::CallbackOperator(Index dim, bool symmetric, bool psd,
                                   ApplyFn apply, ApplyFn apply_adjoint)
    : LinearOperator(dim, symmetric, psd),
      apply_(std::move(apply)),
      apply_adjoint_(std::move(apply_adjoint)) {
  if (!apply_) throw ContractViolation("callback operator needs an apply");
  if (psd && !symmetric) {
    throw ContractViolation("a psd operator must be symmetric");
  }
}

void CallbackOperator::apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                  Eigen::Ref<Eigen::MatrixXd> y) const {
  // The callback contract is a contiguous column-major block.
  Eigen::MatrixXd xin = x;
  Eigen::MatrixXd yout(x.rows(), x.cols());
  apply_(xin.data(), yout.data(), x.rows(), x.cols());
  y = yout;
}

void CallbackOperator::apply_adjoint_impl(
    const Eigen::Ref<const Eigen::MatrixXd>& x,
    Eigen::Ref<Eigen::MatrixXd> y) const {
  if (!apply_adjoint_) {
    LinearOperator::apply_adjoint_impl(x, y);
    return;
  }
  Eigen::MatrixXd xin = x;
  Eigen::MatrixXd yout(x.rows(), x.cols());
  apply_adjoint_(xin.data(), yout.data(), x.rows(), x.cols());
  y = yout;
}

}  // namespace xtrace
