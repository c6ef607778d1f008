#ifndef XTRACE_TYPES_HPP
#define XTRACE_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xtrace {

using Index = std::int64_t;

// Distributions for the random test vectors.  All three are isotropic:
// E[w w^T] = I.
enum class Distribution { Signs, Gaussian, Sphere };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution d);

// A precondition on dimensions or parameters was violated by the caller.
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The input is numerically degenerate: singular sketch, indefinite Gram
// matrix after stabilization, zero denominator in an entrywise ratio.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File reading / parsing failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of a trace estimator run.
struct TraceReport {
  double estimate = 0.0;
  // Posterior error estimate (sample standard error of the basic
  // estimates).  Absent for estimators without iid per-sample structure.
  std::optional<double> err_est;
  // Basic estimates whose mean equals `estimate`, when the estimator is an
  // average of exchangeable terms.  Empty otherwise.
  std::vector<double> per_sample;
  Index matvecs_used = 0;
};

// Result of a diagonal estimator run.
struct DiagReport {
  Eigen::VectorXd estimate;
  Index matvecs_used = 0;
  Index adjoint_matvecs_used = 0;
};

}  // namespace xtrace

#endif
