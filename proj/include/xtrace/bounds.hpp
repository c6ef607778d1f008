#ifndef XTRACE_BOUNDS_HPP
#define XTRACE_BOUNDS_HPP

#include "xtrace/types.hpp"

namespace xtrace {

enum class BoundKind { HutchPP, XTrace, XNysTrace };

BoundKind parse_bound_kind(std::string_view name);

struct VarianceBound {
  BoundKind kind;
  Index m = 0;
  Index r = 0;        // minimizing approximation rank
  double value = 0.0;  // root-mean-square error bound
};

// A priori RMSE bounds for the variance-reduced estimators with standard
// normal test vectors, minimized over the admissible approximation rank r
// given the exact singular values (descending).  The admissible ranges are
// r <= m/3 - 2 (Hutch++), r <= m/2 - 4 (XTrace) and r <= m - 6 (XNysTrace).
VarianceBound variance_bound(BoundKind kind,
                             const Eigen::Ref<const Eigen::VectorXd>& sv_desc,
                             Index m);

}  // namespace xtrace

#endif
