#include "xtrace/adaptive.hpp"

#include <cmath>

namespace xtrace {

namespace {

void validate(const AdaptiveConfig& cfg) {
  if (cfg.initial_budget < 4) {
    throw ContractViolation("adaptive: initial budget must be >= 4");
  }
  if (cfg.estimator == AdaptiveEstimator::XTrace &&
      cfg.initial_budget % 2 != 0) {
    throw ContractViolation("adaptive: xtrace needs an even budget");
  }
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) {
    throw ContractViolation("adaptive: tolerance must lie in (0, 1)");
  }
  if (cfg.budget_cap < cfg.initial_budget) {
    throw ContractViolation("adaptive: budget cap below initial budget");
  }
}

Index vectors_for_budget(const AdaptiveConfig& cfg, Index m) {
  return cfg.estimator == AdaptiveEstimator::XTrace ? m / 2 : m;
}

}  // namespace

AdaptiveResult run_adaptive(const LinearOperator& op,
                            const AdaptiveConfig& cfg) {
  validate(cfg);
  const Index n = op.dim();
  // The sketch cannot be wider than the operator; doubling stops there
  // even when the configured cap is larger.
  const Index feasible_cap =
      cfg.estimator == AdaptiveEstimator::XTrace ? 2 * n : n;
  if (cfg.initial_budget > feasible_cap) {
    throw ContractViolation(
        "adaptive: initial budget exceeds what the dimension supports");
  }
  const Index cap = std::min(cfg.budget_cap, feasible_cap);

  AdaptiveResult result;
  TestMatrix tm =
      sample_test_matrix(cfg.distribution, n,
                         vectors_for_budget(cfg, cfg.initial_budget), cfg.seed);
  Eigen::MatrixXd y = op.apply(tm.omega);
  // XTrace additionally tracks Z = A Q.  Columns of Q are stable under
  // column extension of Y (Householder QR proceeds left to right), so the
  // cached columns of Z stay valid and only the new ones cost matvecs.
  Eigen::MatrixXd z(n, 0);
  Index matvecs = y.cols();

  for (Index budget = cfg.initial_budget;; budget *= 2) {
    const Index k = vectors_for_budget(cfg, budget);
    if (tm.cols() < k) {
      const Index old_k = tm.cols();
      tm = extend_test_matrix(tm, k - old_k);
      y.conservativeResize(Eigen::NoChange, k);
      y.rightCols(k - old_k) = op.apply(tm.omega.rightCols(k - old_k));
      matvecs += k - old_k;
    }

    TraceReport rep;
    if (cfg.estimator == AdaptiveEstimator::XTrace) {
      const SketchState st = build_sketch(tm.omega, y);
      const Index old_zk = z.cols();
      z.conservativeResize(Eigen::NoChange, k);
      z.rightCols(k - old_zk) = op.apply(st.q.rightCols(k - old_zk));
      matvecs += k - old_zk;
      rep = detail::xtrace_from_parts(n, tm.omega, st, z, cfg.normalize,
                                      matvecs);
    } else {
      rep = detail::xnystrace_from_parts(n, tm.omega, y, cfg.normalize,
                                         matvecs);
    }

    result.history.push_back({budget, rep.estimate, rep.err_est.value_or(0.0)});
    result.report = std::move(rep);
    if (result.report.err_est &&
        *result.report.err_est <=
            cfg.rel_tol * std::abs(result.report.estimate)) {
      result.converged = true;
      break;
    }
    if (2 * budget > cap) break;  // capped: flagged, not an error
  }
  return result;
}

}  // namespace xtrace
