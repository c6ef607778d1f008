#include "xtrace/sampling.hpp"

#include <cmath>
#include <numbers>

namespace xtrace {

Distribution parse_distribution(std::string_view name) {
  if (name == "signs") return Distribution::Signs;
  if (name == "gaussian") return Distribution::Gaussian;
  if (name == "sphere") return Distribution::Sphere;
  throw ContractViolation("unknown test-vector distribution: " +
                          std::string(name));
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::Signs: return "signs";
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Sphere: return "sphere";
  }
  return "?";
}

namespace rng {

void SplitMix64::normal_pair(double& a, double& b) {
  const double u1 = uniform_pos();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  a = r * std::cos(t);
  b = r * std::sin(t);
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

}  // namespace rng

namespace {

void fill_gaussian(rng::SplitMix64& g, double* col, Index n) {
  Index i = 0;
  while (i < n) {
    double a, b;
    g.normal_pair(a, b);
    col[i++] = a;
    if (i < n) col[i++] = b;
  }
}

void fill_column(Distribution dist, rng::SplitMix64& g, double* col, Index n) {
  switch (dist) {
    case Distribution::Signs:
      for (Index i = 0; i < n; ++i) {
        col[i] = (g.next() >> 63) ? -1.0 : 1.0;
      }
      break;
    case Distribution::Gaussian:
      fill_gaussian(g, col, n);
      break;
    case Distribution::Sphere: {
      fill_gaussian(g, col, n);
      double norm2 = 0.0;
      for (Index i = 0; i < n; ++i) norm2 += col[i] * col[i];
      const double scale = std::sqrt(static_cast<double>(n) / norm2);
      for (Index i = 0; i < n; ++i) col[i] *= scale;
      break;
    }
  }
}

}  // namespace

TestMatrix sample_test_matrix(Distribution distribution, Index n, Index k,
                              std::uint64_t seed) {
  if (n < 1) throw ContractViolation("sample_test_matrix: n must be >= 1");
  if (k < 1) throw ContractViolation("sample_test_matrix: k must be >= 1");
  TestMatrix tm{Eigen::MatrixXd(n, k), distribution, seed};
  for (Index j = 0; j < k; ++j) {
    rng::SplitMix64 g(rng::split_seed(seed, static_cast<std::uint64_t>(j)));
    fill_column(distribution, g, tm.omega.col(j).data(), n);
  }
  return tm;
}

TestMatrix extend_test_matrix(const TestMatrix& tm, Index extra_k) {
  if (extra_k < 0) {
    throw ContractViolation("extend_test_matrix: extra_k must be >= 0");
  }
  if (extra_k == 0) return tm;
  const Index n = tm.rows();
  const Index k = tm.cols();
  TestMatrix out{Eigen::MatrixXd(n, k + extra_k), tm.distribution, tm.seed};
  out.omega.leftCols(k) = tm.omega;
  for (Index j = k; j < k + extra_k; ++j) {
    rng::SplitMix64 g(
        rng::split_seed(tm.seed, static_cast<std::uint64_t>(j)));
    fill_column(tm.distribution, g, out.omega.col(j).data(), n);
  }
  return out;
}

}  // namespace xtrace
