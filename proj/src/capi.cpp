#include "xtrace/xtrace_c.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include "xtrace/adaptive.hpp"
#include "xtrace/bounds.hpp"
#include "xtrace/estimators.hpp"
#include "xtrace/linop.hpp"
#include "xtrace/matrix_market.hpp"
#include "xtrace/sampling.hpp"
#include "xtrace/spectra.hpp"
#include "xtrace/tfim.hpp"

struct xt_operator {
  std::unique_ptr<xtrace::LinearOperator> op;
};

namespace {

thread_local std::string g_last_error;

xt_status set_error(xt_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
xt_status guarded(Fn&& fn) {
  try {
    fn();
    return XT_OK;
  } catch (const xtrace::ContractViolation& e) {
    return set_error(XT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const xtrace::DegenerateInput& e) {
    return set_error(XT_ERR_DEGENERATE, e.what());
  } catch (const xtrace::IoError& e) {
    return set_error(XT_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(XT_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(XT_ERR_INTERNAL, "unknown error");
  }
}

xt_status make_operator(xt_operator** out,
                        std::unique_ptr<xtrace::LinearOperator> op) {
  *out = new xt_operator{std::move(op)};
  return XT_OK;
}

void require(bool cond, const char* what) {
  if (!cond) throw xtrace::ContractViolation(what);
}

void fill_result(const xtrace::TraceReport& rep, xt_trace_result* result,
                 double* per_sample) {
  if (result) {
    result->estimate = rep.estimate;
    result->err_est = rep.err_est.value_or(
        std::numeric_limits<double>::quiet_NaN());
    result->matvecs = rep.matvecs_used;
    result->adjoint_matvecs = 0;
    result->per_sample_len = static_cast<int64_t>(rep.per_sample.size());
  }
  if (per_sample && !rep.per_sample.empty()) {
    std::memcpy(per_sample, rep.per_sample.data(),
                rep.per_sample.size() * sizeof(double));
  }
}

double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }

}  // namespace

extern "C" {

const char* xt_last_error(void) { return g_last_error.c_str(); }
const char* xt_version(void) { return "1.0.0"; }

xt_status xt_operator_create_dense(const double* a, int64_t n, int psd,
                                   xt_operator** out) {
  return guarded([&] {
    require(a && out && n >= 1, "create_dense: bad arguments");
    Eigen::Map<const Eigen::MatrixXd> m(a, n, n);
    make_operator(out, std::make_unique<xtrace::DenseOperator>(
                           Eigen::MatrixXd(m), psd != 0));
  });
}

xt_status xt_operator_create_diagonal(const double* d, int64_t n,
                                      xt_operator** out) {
  return guarded([&] {
    require(d && out && n >= 1, "create_diagonal: bad arguments");
    Eigen::Map<const Eigen::VectorXd> v(d, n);
    make_operator(out, std::make_unique<xtrace::DiagonalOperator>(
                           Eigen::VectorXd(v)));
  });
}

xt_status xt_operator_create_synthetic(const char* spectrum, int64_t n,
                                       uint64_t seed, xt_operator** out) {
  return guarded([&] {
    require(spectrum && out, "create_synthetic: bad arguments");
    xtrace::SpectrumSpec spec;
    spec.kind = xtrace::parse_spectrum(spectrum);
    spec.dim = n;
    make_operator(out, std::make_unique<xtrace::DenseSpectralOperator>(
                           xtrace::haar_orthogonal(n, seed),
                           xtrace::spectrum_eigenvalues(spec)));
  });
}

xt_status xt_operator_create_tfim(int32_t sites, double field,
                                  xt_operator** out) {
  return guarded([&] {
    require(out != nullptr, "create_tfim: bad arguments");
    make_operator(out, std::make_unique<xtrace::TfimHamiltonian>(sites, field));
  });
}

xt_status xt_operator_create_tfim_boltzmann(int32_t sites, double field,
                                            double beta, int weight_by_energy,
                                            xt_operator** out) {
  return guarded([&] {
    require(out != nullptr, "create_tfim_boltzmann: bad arguments");
    xtrace::DenseSpectralOperator h = xtrace::tfim_spectral(sites, field);
    const double shift = (1.0 + field) * sites;
    // Eigenvalues of H + bI are nonnegative up to roundoff; clamp so the
    // psd hint survives for the energy-weighted operator.
    Eigen::VectorXd mapped = h.eigenvalues();
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
      const double x = clamp_nonneg(mapped[i] + shift);
      mapped[i] = weight_by_energy ? x * std::exp(-beta * x)
                                   : std::exp(-beta * x);
    }
    make_operator(out, std::make_unique<xtrace::DenseSpectralOperator>(
                           h.shared_eigenbasis(), std::move(mapped)));
  });
}

xt_status xt_operator_create_adjacency_function(const char* mtx_path,
                                                const char* function,
                                                xt_operator** out) {
  return guarded([&] {
    require(mtx_path && function && out, "adjacency_function: bad arguments");
    const Eigen::MatrixXd m = xtrace::read_matrix_market(mtx_path);
    require(m.rows() <= 4000, "adjacency matrix too large (n > 4000)");
    std::function<double(double)> f;
    if (std::strcmp(function, "exp") == 0) {
      f = [](double x) { return std::exp(x); };
    } else if (std::strcmp(function, "cube_half") == 0) {
      f = [](double x) { return 0.5 * x * x * x; };
    } else {
      throw xtrace::ContractViolation(
          "adjacency function must be 'exp' or 'cube_half'");
    }
    make_operator(out, std::make_unique<xtrace::DenseSpectralOperator>(
                           xtrace::make_function_operator(m, f)));
  });
}

xt_status xt_operator_create_callback(int64_t dim, int symmetric, int psd,
                                      xt_apply_fn apply,
                                      xt_apply_fn apply_adjoint, void* ctx,
                                      xt_operator** out) {
  return guarded([&] {
    require(out && apply, "create_callback: bad arguments");
    auto wrap = [ctx](xt_apply_fn fn) -> xtrace::CallbackOperator::ApplyFn {
      if (!fn) return nullptr;
      return [fn, ctx](const double* x, double* y, xtrace::Index n,
                       xtrace::Index k) { fn(ctx, x, y, n, k); };
    };
    make_operator(out, std::make_unique<xtrace::CallbackOperator>(
                           dim, symmetric != 0, psd != 0, wrap(apply),
                           wrap(apply_adjoint)));
  });
}

void xt_operator_destroy(xt_operator* op) { delete op; }

int64_t xt_operator_dim(const xt_operator* op) { return op->op->dim(); }
int xt_operator_is_symmetric(const xt_operator* op) {
  return op->op->symmetric_hint() ? 1 : 0;
}
int xt_operator_is_psd(const xt_operator* op) {
  return op->op->psd_hint() ? 1 : 0;
}

xt_status xt_operator_apply(const xt_operator* op, const double* x, int64_t k,
                            double* y) {
  return guarded([&] {
    require(x && y && k >= 1, "apply: bad arguments");
    Eigen::Map<const Eigen::MatrixXd> xin(x, op->op->dim(), k);
    Eigen::Map<Eigen::MatrixXd>(y, op->op->dim(), k) = op->op->apply(xin);
  });
}

xt_status xt_operator_apply_adjoint(const xt_operator* op, const double* x,
                                    int64_t k, double* y) {
  return guarded([&] {
    require(x && y && k >= 1, "apply_adjoint: bad arguments");
    Eigen::Map<const Eigen::MatrixXd> xin(x, op->op->dim(), k);
    Eigen::Map<Eigen::MatrixXd>(y, op->op->dim(), k) =
        op->op->apply_adjoint(xin);
  });
}

int64_t xt_operator_matvec_count(const xt_operator* op) {
  return op->op->matvec_count();
}
int64_t xt_operator_adjoint_matvec_count(const xt_operator* op) {
  return op->op->adjoint_matvec_count();
}
void xt_operator_reset_counters(const xt_operator* op) {
  op->op->reset_counters();
}

xt_status xt_exact_trace(const xt_operator* op, double* out) {
  return guarded([&] {
    require(out != nullptr, "exact_trace: bad arguments");
    *out = xtrace::exact_trace(*op->op);
  });
}

xt_status xt_exact_diag(const xt_operator* op, double* out) {
  return guarded([&] {
    require(out != nullptr, "exact_diag: bad arguments");
    Eigen::Map<Eigen::VectorXd>(out, op->op->dim()) =
        xtrace::exact_diag(*op->op);
  });
}

xt_status xt_spectrum_eigenvalues(const char* spectrum, int64_t n,
                                  double* out) {
  return guarded([&] {
    require(spectrum && out, "spectrum_eigenvalues: bad arguments");
    xtrace::SpectrumSpec spec;
    spec.kind = xtrace::parse_spectrum(spectrum);
    spec.dim = n;
    Eigen::Map<Eigen::VectorXd>(out, n) = xtrace::spectrum_eigenvalues(spec);
  });
}

xt_status xt_tfim_eigenvalues(int32_t sites, double field, double* out) {
  return guarded([&] {
    require(out != nullptr, "tfim_eigenvalues: bad arguments");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        xtrace::tfim_dense(sites, field), Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, "tfim eigensolve failed");
    Eigen::Map<Eigen::VectorXd>(out, es.eigenvalues().size()) =
        es.eigenvalues();
  });
}

double xt_tfim_psd_shift(int32_t sites, double field) {
  return (1.0 + field) * sites;
}

int64_t xt_admissible_budget(const char* estimator, int64_t m) {
  if (!estimator || m < 1) return 0;
  const std::string name(estimator);
  if (name == "hutch" || name == "bks") return m;
  if (name == "hutchpp") return m >= 3 ? m - (m % 3) : 0;
  if (name == "xtrace" || name == "xdiag") {
    const int64_t even = m - (m % 2);
    return even >= 4 ? even : 0;
  }
  if (name == "lra" || name == "nystrompp") {
    const int64_t even = m - (m % 2);
    return even >= 2 ? even : 0;
  }
  if (name == "xnystrace") return m >= 2 ? m : 0;
  return 0;
}

uint64_t xt_split_seed(uint64_t seed, uint64_t index) {
  return xtrace::rng::split_seed(seed, index);
}

xt_status xt_trace_estimate(const xt_operator* op, const char* estimator,
                            int64_t m, const char* distribution, int normalize,
                            uint64_t seed, xt_trace_result* result,
                            double* per_sample) {
  return guarded([&] {
    require(estimator && distribution, "trace_estimate: bad arguments");
    const xtrace::Distribution dist =
        xtrace::parse_distribution(distribution);
    const std::string name(estimator);
    const xtrace::LinearOperator& a = *op->op;
    xtrace::TraceReport rep;
    if (name == "hutch") {
      rep = xtrace::hutch(a, m, dist, seed);
    } else if (name == "lra") {
      rep = xtrace::lra_trace(a, m, dist, seed);
    } else if (name == "hutchpp") {
      rep = xtrace::hutchpp(a, m, dist, seed);
    } else if (name == "nystrompp") {
      rep = xtrace::nystrompp(a, m, dist, seed);
    } else if (name == "xtrace") {
      rep = xtrace::xtrace(a, m, dist, normalize != 0, seed);
    } else if (name == "xnystrace") {
      rep = xtrace::xnystrace(a, m, dist, normalize != 0, seed);
    } else {
      throw xtrace::ContractViolation("unknown trace estimator: " + name);
    }
    fill_result(rep, result, per_sample);
  });
}

xt_status xt_diag_estimate(const xt_operator* op, const char* estimator,
                           int64_t m, const char* distribution, uint64_t seed,
                           double* diag_out, xt_trace_result* result) {
  return guarded([&] {
    require(estimator && diag_out, "diag_estimate: bad arguments");
    const std::string name(estimator);
    const xtrace::LinearOperator& a = *op->op;
    xtrace::DiagReport rep;
    if (name == "bks") {
      require(distribution != nullptr, "bks needs a distribution");
      rep = xtrace::bks_diag(a, m, xtrace::parse_distribution(distribution),
                             seed);
    } else if (name == "xdiag") {
      rep = xtrace::xdiag(a, m, seed);
    } else {
      throw xtrace::ContractViolation("unknown diagonal estimator: " + name);
    }
    Eigen::Map<Eigen::VectorXd>(diag_out, a.dim()) = rep.estimate;
    if (result) {
      result->estimate = 0.0;
      result->err_est = std::numeric_limits<double>::quiet_NaN();
      result->matvecs = rep.matvecs_used;
      result->adjoint_matvecs = rep.adjoint_matvecs_used;
      result->per_sample_len = 0;
    }
  });
}

xt_status xt_trace_adaptive(const xt_operator* op, const char* estimator,
                            const char* distribution, int normalize,
                            uint64_t seed, int64_t initial_budget,
                            double rel_tol, int64_t budget_cap,
                            xt_trace_result* result, int* converged,
                            int64_t* rounds) {
  return guarded([&] {
    require(estimator && distribution, "trace_adaptive: bad arguments");
    xtrace::AdaptiveConfig cfg;
    const std::string name(estimator);
    if (name == "xtrace") {
      cfg.estimator = xtrace::AdaptiveEstimator::XTrace;
    } else if (name == "xnystrace") {
      cfg.estimator = xtrace::AdaptiveEstimator::XNysTrace;
    } else {
      throw xtrace::ContractViolation("adaptive driver supports xtrace and "
                                      "xnystrace only");
    }
    cfg.distribution = xtrace::parse_distribution(distribution);
    cfg.normalize = normalize != 0;
    cfg.initial_budget = initial_budget;
    cfg.rel_tol = rel_tol;
    cfg.budget_cap = budget_cap;
    cfg.seed = seed;
    const xtrace::AdaptiveResult res = xtrace::run_adaptive(*op->op, cfg);
    fill_result(res.report, result, nullptr);
    if (converged) *converged = res.converged ? 1 : 0;
    if (rounds) *rounds = static_cast<int64_t>(res.history.size());
  });
}

xt_status xt_variance_bound(const char* estimator, const double* sv, int64_t n,
                            int64_t m, double* bound, int64_t* r_opt) {
  return guarded([&] {
    require(estimator && sv && bound, "variance_bound: bad arguments");
    Eigen::Map<const Eigen::VectorXd> values(sv, n);
    const xtrace::VarianceBound b = xtrace::variance_bound(
        xtrace::parse_bound_kind(estimator), values, m);
    *bound = b.value;
    if (r_opt) *r_opt = b.r;
  });
}

}  // extern "C"
