#ifndef XTRACE_LINOP_HPP
#define XTRACE_LINOP_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "xtrace/types.hpp"

namespace xtrace {

// Implicit square matrix accessed through matrix-vector products.  Blocks
// are applied column-wise; an N x k application increments the matvec
// counter by exactly k.  Applications are safe to run concurrently from
// several threads; the counters are atomic.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  Index dim() const { return dim_; }
  bool symmetric_hint() const { return symmetric_; }
  bool psd_hint() const { return psd_; }

  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Eigen::MatrixXd apply_adjoint(
      const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  std::int64_t matvec_count() const { return matvecs_.load(); }
  std::int64_t adjoint_matvec_count() const { return adjoint_matvecs_.load(); }
  void reset_counters() const {
    matvecs_.store(0);
    adjoint_matvecs_.store(0);
  }

 protected:
  LinearOperator(Index dim, bool symmetric, bool psd);
  // Copies start with fresh counters.
  LinearOperator(const LinearOperator& o)
      : dim_(o.dim_), symmetric_(o.symmetric_), psd_(o.psd_) {}
  LinearOperator& operator=(const LinearOperator&) = delete;

  virtual void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                          Eigen::Ref<Eigen::MatrixXd> y) const = 0;
  // Default: defer to apply_impl when the operator is symmetric.
  virtual void apply_adjoint_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                  Eigen::Ref<Eigen::MatrixXd> y) const;

  // Operators that know their exact trace / diagonal report them here so
  // the testing oracles need not densify.
  virtual std::optional<double> exact_trace_hint() const { return {}; }
  virtual std::optional<Eigen::VectorXd> exact_diag_hint() const { return {}; }

 private:
  void check_block(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  friend Eigen::MatrixXd densify(const LinearOperator& op, Index max_dim);
  friend double exact_trace(const LinearOperator& op);
  friend Eigen::VectorXd exact_diag(const LinearOperator& op);

  Index dim_;
  bool symmetric_;
  bool psd_;
  mutable std::atomic<std::int64_t> matvecs_{0};
  mutable std::atomic<std::int64_t> adjoint_matvecs_{0};
};

// Materializes the operator as a dense matrix by applying it to the
// identity.  Test/oracle path only: does not touch the matvec counters.
// Throws ContractViolation when dim() > max_dim.
Eigen::MatrixXd densify(const LinearOperator& op, Index max_dim = 4096);

// Ground-truth trace / diagonal, from the operator's cache when present and
// by densification otherwise.
double exact_trace(const LinearOperator& op);
Eigen::VectorXd exact_diag(const LinearOperator& op);

// Plain dense matrix.
class DenseOperator : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd a, bool psd = false);

  const Eigen::MatrixXd& matrix() const { return a_; }

 protected:
  void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Ref<Eigen::MatrixXd> y) const override;
  void apply_adjoint_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                          Eigen::Ref<Eigen::MatrixXd> y) const override;
  std::optional<double> exact_trace_hint() const override;
  std::optional<Eigen::VectorXd> exact_diag_hint() const override;

 private:
  Eigen::MatrixXd a_;
};

// diag(d); the identity is DiagonalOperator of ones.
class DiagonalOperator : public LinearOperator {
 public:
  explicit DiagonalOperator(Eigen::VectorXd d);

 protected:
  void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Ref<Eigen::MatrixXd> y) const override;
  std::optional<double> exact_trace_hint() const override;
  std::optional<Eigen::VectorXd> exact_diag_hint() const override;

 private:
  Eigen::VectorXd d_;
};

DiagonalOperator identity_operator(Index n);

// A(lambda) = U diag(lambda) U^T for an orthogonal eigenbasis U.  The exact
// trace and diagonal come with the factorization.  The dense product is
// cached on first use so repeated applications cost one GEMM.
class DenseSpectralOperator : public LinearOperator {
 public:
  DenseSpectralOperator(Eigen::MatrixXd eigenbasis, Eigen::VectorXd eigenvalues);
  DenseSpectralOperator(std::shared_ptr<const Eigen::MatrixXd> eigenbasis,
                        Eigen::VectorXd eigenvalues);
  // Copies share the eigenbasis and rebuild the dense cache on demand.
  DenseSpectralOperator(const DenseSpectralOperator& o)
      : LinearOperator(o), u_(o.u_), lambda_(o.lambda_) {}

  const Eigen::MatrixXd& eigenbasis() const { return *u_; }
  std::shared_ptr<const Eigen::MatrixXd> shared_eigenbasis() const { return u_; }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }

 protected:
  void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Ref<Eigen::MatrixXd> y) const override;
  std::optional<double> exact_trace_hint() const override;
  std::optional<Eigen::VectorXd> exact_diag_hint() const override;

 private:
  const Eigen::MatrixXd& dense() const;

  std::shared_ptr<const Eigen::MatrixXd> u_;
  Eigen::VectorXd lambda_;
  mutable std::once_flag dense_once_;
  mutable Eigen::MatrixXd dense_;
};

// Operator for f(A) built by transforming the eigenvalues of a symmetric
// base.  Used for exp(-beta H), H exp(-beta H), exp(M) and M^3/2 at desk
// scale, replacing iterative matrix-function approximation.
DenseSpectralOperator make_function_operator(
    const DenseSpectralOperator& base, const std::function<double(double)>& f);
DenseSpectralOperator make_function_operator(
    const Eigen::Ref<const Eigen::MatrixXd>& symmetric_base,
    const std::function<double(double)>& f);

// Matrix-free operator over a user-supplied apply callback (C API bridge).
class CallbackOperator : public LinearOperator {
 public:
  using ApplyFn = std::function<void(const double* x, double* y, Index n,
                                     Index k)>;

  CallbackOperator(Index dim, bool symmetric, bool psd, ApplyFn apply,
                   ApplyFn apply_adjoint);

 protected:
  void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Ref<Eigen::MatrixXd> y) const override;
  void apply_adjoint_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                          Eigen::Ref<Eigen::MatrixXd> y) const override;

 private:
  ApplyFn apply_;
  ApplyFn apply_adjoint_;
};

}  // namespace xtrace

#endif
