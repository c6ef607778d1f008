#include "xtrace/bounds.hpp"

#include <cmath>
#include <numbers>

namespace xtrace {

BoundKind parse_bound_kind(std::string_view name) {
  if (name == "hutchpp") return BoundKind::HutchPP;
  if (name == "xtrace") return BoundKind::XTrace;
  if (name == "xnystrace") return BoundKind::XNysTrace;
  throw ContractViolation("no variance bound for estimator: " +
                          std::string(name));
}

VarianceBound variance_bound(BoundKind kind,
                             const Eigen::Ref<const Eigen::VectorXd>& sv_desc,
                             Index m) {
  const Index n = sv_desc.size();
  if (n < 1) throw ContractViolation("variance_bound: empty spectrum");
  for (Index i = 0; i < n; ++i) {
    if (sv_desc[i] < 0.0 || (i > 0 && sv_desc[i] > sv_desc[i - 1])) {
      throw ContractViolation(
          "variance_bound: singular values must be nonnegative descending");
    }
  }

  // Tail norms of A - [A]_r for r = 0..n, accumulated from the small end.
  std::vector<double> tail_spec(n + 1, 0.0), tail_fro(n + 1, 0.0),
      tail_nuc(n + 1, 0.0);
  for (Index r = n - 1; r >= 0; --r) {
    tail_spec[r] = sv_desc[r];
    tail_fro[r] = tail_fro[r + 1] + sv_desc[r] * sv_desc[r];
    tail_nuc[r] = tail_nuc[r + 1] + sv_desc[r];
  }
  for (Index r = 0; r <= n; ++r) tail_fro[r] = std::sqrt(tail_fro[r]);

  Index r_max = 0;
  switch (kind) {
    case BoundKind::HutchPP: r_max = m / 3 - 2; break;
    case BoundKind::XTrace: r_max = m / 2 - 4; break;
    case BoundKind::XNysTrace: r_max = m - 6; break;
  }
  r_max = std::min(r_max, n);
  if (r_max < 0) {
    throw ContractViolation("variance_bound: budget too small for m=" +
                            std::to_string(m));
  }

  const double e = std::numbers::e;
  VarianceBound best{kind, m, 0,
                     std::numeric_limits<double>::infinity()};
  for (Index r = 0; r <= r_max; ++r) {
    double value = 0.0;
    switch (kind) {
      case BoundKind::HutchPP: {
        const double gap = static_cast<double>(m) / 3.0 - r - 1.0;
        value = std::sqrt(2.0) * tail_fro[r] / std::sqrt(gap);
        break;
      }
      case BoundKind::XTrace: {
        const double gap = static_cast<double>(m) / 2.0 - r - 3.0;
        value = std::sqrt(static_cast<double>(m)) *
                (2.0 * tail_spec[r] / std::sqrt(gap) +
                 2.0 * e * tail_fro[r] / gap);
        break;
      }
      case BoundKind::XNysTrace: {
        const double gap = static_cast<double>(m) - r - 5.0;
        value = static_cast<double>(m) *
                (std::sqrt(8.0) * tail_spec[r] / gap +
                 std::sqrt(2.0) * tail_fro[r] / std::pow(gap, 1.5) +
                 5.0 * e * e * tail_nuc[r] / (gap * gap));
        break;
      }
    }
    if (value < best.value) {
      best.value = value;
      best.r = r;
    }
  }
  return best;
}

}  // namespace xtrace
