#ifndef XTRACE_SAMPLING_HPP
#define XTRACE_SAMPLING_HPP

#include <cstdint>

#include "xtrace/types.hpp"

namespace xtrace {

namespace rng {

// SplitMix64 (Steele, Lea & Vigna).  Fixed as the library's generator so
// that streams are reproducible across runs and, for a conforming
// reimplementation, across languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform on (0,1]; safe as a log argument.
  double uniform_pos() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }
  // Standard normal via Box-Muller.  Pairs are consumed eagerly; callers
  // that need an odd count discard the trailing deviate.
  void normal_pair(double& a, double& b);

 private:
  std::uint64_t state_;
};

// SplitMix64 finalizer, used to derive independent substreams from a base
// seed (one per test-vector column, one per benchmark trial).
std::uint64_t mix64(std::uint64_t z);
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace rng

// The N x k block of random test vectors, together with the provenance
// needed to extend it without disturbing the existing columns.
struct TestMatrix {
  Eigen::MatrixXd omega;
  Distribution distribution = Distribution::Gaussian;
  std::uint64_t seed = 0;

  Index rows() const { return omega.rows(); }
  Index cols() const { return omega.cols(); }
};

// Draws an N x k test matrix.  Column j is generated from its own
// substream split_seed(seed, j), fully and in order, so that the result is
// a deterministic function of (distribution, N, k, seed) and extending by
// columns is an exact stream continuation.
TestMatrix sample_test_matrix(Distribution distribution, Index n, Index k,
                              std::uint64_t seed);

// Returns a test matrix with `extra_k` more columns whose first tm.cols()
// columns are bit-identical to tm's.
TestMatrix extend_test_matrix(const TestMatrix& tm, Index extra_k);

}  // namespace xtrace

#endif
