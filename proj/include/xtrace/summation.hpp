#ifndef XTRACE_SUMMATION_HPP
#define XTRACE_SUMMATION_HPP

#include <cmath>
#include <span>

namespace xtrace {

// Neumaier variant of Kahan summation.  The per-sample loops of the
// estimators accumulate quantities whose differences sit near machine
// precision, which in turn drive the posterior error estimate.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

inline double compensated_mean(std::span<const double> xs) {
  return xs.empty() ? 0.0 : compensated_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace xtrace

#endif
