#ifndef XTRACE_ADAPTIVE_HPP
#define XTRACE_ADAPTIVE_HPP

#include <cstdint>
#include <vector>

#include "xtrace/estimators.hpp"

namespace xtrace {

enum class AdaptiveEstimator { XTrace, XNysTrace };

struct AdaptiveConfig {
  AdaptiveEstimator estimator = AdaptiveEstimator::XNysTrace;
  Distribution distribution = Distribution::Gaussian;
  bool normalize = false;
  Index initial_budget = 8;  // m0
  double rel_tol = 1e-3;     // stop when err_est <= rel_tol * |estimate|
  Index budget_cap = 4096;
  std::uint64_t seed = 0;
};

struct AdaptiveRound {
  Index budget = 0;
  double estimate = 0.0;
  double err_est = 0.0;
};

struct AdaptiveResult {
  TraceReport report;  // evaluated at the final budget
  bool converged = false;
  std::vector<AdaptiveRound> history;
};

// Doubling strategy: run the estimator at budgets m0, 2 m0, 4 m0, ... until
// the posterior error estimate meets the relative tolerance or the cap is
// reached (a capped run is flagged, not an error).  Matvecs from earlier
// rounds are reused through stream extension of the test matrix, so the
// total matvec count equals the final budget; factorizations are rebuilt
// each round.
AdaptiveResult run_adaptive(const LinearOperator& op,
                            const AdaptiveConfig& cfg);

}  // namespace xtrace

#endif
