#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "xtrace/estimators.hpp"
#include "xtrace/oracle.hpp"

using namespace xtrace;
using xthelp::rank_r_psd;

TEST_CASE("pencil-sized xtrace instance") {
  // A = diag(1,2,3,4), Omega = [e1 e2].  Leaving out column i leaves a
  // single scaled basis vector, so Q_(i) is e2 (resp. e1); the low-rank
  // trace terms are 2 and 1 and the residuals 1 and 2.  Every basic
  // estimate is 3 and the spread is zero.
  Eigen::VectorXd d(4);
  d << 1, 2, 3, 4;
  const DiagonalOperator op(d);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4, 2);
  omega(0, 0) = 1.0;
  omega(1, 1) = 1.0;
  const TestMatrix tm{omega, Distribution::Signs, 0};

  const TraceReport rep = oracle::xtrace_naive(op, tm, false);
  REQUIRE(rep.per_sample.size() == 2);
  CHECK(rep.per_sample[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(rep.per_sample[1] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(rep.estimate == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(*rep.err_est == doctest::Approx(0.0).scale(1e-12));
}

TEST_CASE("oracles are pure functions of their inputs") {
  const DenseSpectralOperator op = xthelp::exp_instance(60, 3);
  const TestMatrix tm = sample_test_matrix(Distribution::Gaussian, 60, 8, 5);
  const TraceReport a = oracle::xtrace_naive(op, tm, true);
  const TraceReport b = oracle::xtrace_naive(op, tm, true);
  CHECK(a.estimate == b.estimate);
  CHECK(a.per_sample == b.per_sample);
  const TraceReport c = oracle::xnystrace_naive(op, tm);
  const TraceReport e = oracle::xnystrace_naive(op, tm);
  CHECK(c.estimate == e.estimate);
  const TestMatrix signs = sample_test_matrix(Distribution::Signs, 60, 8, 5);
  const DiagReport f = oracle::xdiag_naive(op, signs);
  const DiagReport g = oracle::xdiag_naive(op, signs);
  CHECK(f.estimate == g.estimate);
}

TEST_CASE("oracles refuse to densify large operators") {
  const DenseSpectralOperator op = xthelp::exp_instance(600, 1);
  const TestMatrix tm = sample_test_matrix(Distribution::Gaussian, 600, 6, 0);
  CHECK_THROWS_AS(oracle::xtrace_naive(op, tm, false), ContractViolation);
  CHECK_THROWS_AS(oracle::xnystrace_naive(op, tm), ContractViolation);
  CHECK_THROWS_AS(
      oracle::xdiag_naive(op,
                          sample_test_matrix(Distribution::Signs, 600, 6, 0)),
      ContractViolation);
}

TEST_CASE("naive xtrace shares the rank-capture property") {
  const DenseSpectralOperator op = rank_r_psd(60, 5, 11);
  const double truth = exact_trace(op);
  const TestMatrix tm = sample_test_matrix(Distribution::Gaussian, 60, 6, 21);
  const TraceReport rep = oracle::xtrace_naive(op, tm, false);
  CHECK(std::abs(rep.estimate - truth) <= 1e-8 * std::abs(truth));
}

TEST_CASE("naive xnystrace handles the pseudoinverse cutoff") {
  // Rank-deficient gram matrix: the cutoff drops the null directions.
  const DenseSpectralOperator op = rank_r_psd(60, 4, 13);
  const double truth = exact_trace(op);
  const TestMatrix tm = sample_test_matrix(Distribution::Gaussian, 60, 8, 23);
  const TraceReport rep = oracle::xnystrace_naive(op, tm);
  CHECK(std::abs(rep.estimate - truth) <= 1e-6 * std::abs(truth));
}

TEST_CASE("naive xdiag agrees with bks on one-column-out residual shape") {
  // Just the vector length and finiteness; value agreement with the
  // efficient path is covered in the estimator tests.
  const DenseSpectralOperator op = xthelp::exp_instance(40, 17);
  const TestMatrix tm = sample_test_matrix(Distribution::Signs, 40, 6, 29);
  const DiagReport rep = oracle::xdiag_naive(op, tm);
  CHECK(rep.estimate.size() == 40);
  CHECK(rep.estimate.allFinite());
  CHECK(rep.matvecs_used == 6);
  CHECK(rep.adjoint_matvecs_used == 6);
}
