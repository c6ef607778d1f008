#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "xtrace/linop.hpp"
#include "xtrace/sampling.hpp"
#include "xtrace/tfim.hpp"

using namespace xtrace;

namespace {

Eigen::MatrixXd random_block(Index n, Index k, std::uint64_t seed) {
  return sample_test_matrix(Distribution::Gaussian, n, k, seed).omega;
}

}  // namespace

TEST_CASE("identity operator returns its input") {
  const DiagonalOperator id = identity_operator(5);
  const Eigen::MatrixXd x = random_block(5, 3, 1);
  CHECK((id.apply(x) - x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(exact_trace(id) == 5.0);
  CHECK(exact_diag(id) == Eigen::VectorXd::Ones(5));
}

TEST_CASE("unit spectrum acts as the identity") {
  // U diag(1,...,1) U^T = I regardless of the eigenbasis.
  Eigen::MatrixXd u(2, 2);
  const double s = std::sqrt(0.5);
  u << s, -s, s, s;
  const DenseSpectralOperator op(u, Eigen::VectorXd::Ones(2));
  const Eigen::MatrixXd x = random_block(2, 4, 3);
  CHECK((op.apply(x) - x).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("dense diagonal matrix applied to the identity") {
  Eigen::Vector3d d(1.0, 2.0, 3.0);
  const DenseOperator op(d.asDiagonal());
  const Eigen::MatrixXd out = op.apply(Eigen::MatrixXd::Identity(3, 3));
  CHECK((out - Eigen::MatrixXd(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(exact_trace(op) == 6.0);
}

TEST_CASE("adjoint application transposes") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  const DenseOperator op(a);
  CHECK(!op.symmetric_hint());
  Eigen::VectorXd x(2);
  x << 1, 0;
  const Eigen::VectorXd y = op.apply_adjoint(x);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 1.0);
  // And a symmetric operator has apply == apply_adjoint.
  Eigen::MatrixXd sym = a + a.transpose();
  const DenseOperator sop(sym);
  const Eigen::MatrixXd block = random_block(2, 3, 9);
  CHECK((sop.apply(block) - sop.apply_adjoint(block)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("counters increase by the block width") {
  const DiagonalOperator op = identity_operator(6);
  CHECK(op.matvec_count() == 0);
  op.apply(random_block(6, 4, 2));
  CHECK(op.matvec_count() == 4);
  CHECK(op.adjoint_matvec_count() == 0);
  op.apply_adjoint(random_block(6, 2, 3));
  CHECK(op.matvec_count() == 4);
  CHECK(op.adjoint_matvec_count() == 2);
  op.reset_counters();
  CHECK(op.matvec_count() == 0);
  CHECK(op.adjoint_matvec_count() == 0);
}

TEST_CASE("contract violations on bad blocks") {
  const DiagonalOperator op = identity_operator(4);
  CHECK_THROWS_AS(op.apply(random_block(5, 1, 0)), ContractViolation);
  Eigen::MatrixXd bad = random_block(4, 1, 0);
  bad(2, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(op.apply(bad), ContractViolation);
}

TEST_CASE("matrix functions of spectral operators") {
  SUBCASE("identity function reproduces the base") {
    const Eigen::MatrixXd u =
        Eigen::HouseholderQR<Eigen::MatrixXd>(random_block(6, 6, 4))
            .householderQ() *
        Eigen::MatrixXd::Identity(6, 6);
    Eigen::VectorXd lam(6);
    lam << 5, 4, 3, 2, 1, 0.5;
    const DenseSpectralOperator base(u, lam);
    const DenseSpectralOperator same =
        make_function_operator(base, [](double x) { return x; });
    const Eigen::MatrixXd x = random_block(6, 2, 5);
    CHECK((base.apply(x) - same.apply(x)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("exp of diag(0, ln 2) is diag(1, 2)") {
    Eigen::VectorXd lam(2);
    lam << 0.0, std::log(2.0);
    const DenseSpectralOperator base(Eigen::MatrixXd::Identity(2, 2), lam);
    const DenseSpectralOperator e =
        make_function_operator(base, [](double x) { return std::exp(x); });
    const Eigen::MatrixXd out = e.apply(Eigen::MatrixXd::Identity(2, 2));
    CHECK(out(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(out(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(out(0, 1)) <= 1e-14);
  }
  SUBCASE("boltzmann trace of the 4-site spin chain matches dense eig") {
    const double beta = 0.6;
    const DenseSpectralOperator h = tfim_spectral(4, 1.0);
    const DenseSpectralOperator g = make_function_operator(
        h, [beta](double x) { return std::exp(-beta * x); });
    // Independent path: eigendecompose the dense Hamiltonian here.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tfim_dense(4, 1.0));
    double want = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      want += std::exp(-beta * es.eigenvalues()[i]);
    }
    CHECK(exact_trace(g) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("non-symmetric base is rejected") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(make_function_operator(a, [](double x) { return x; }),
                    ContractViolation);
  }
}

TEST_CASE("densification consistency for small operators") {
  // Applying to the identity must reproduce the same matrix as the direct
  // construction, whatever the construction path.
  const Index n = 48;
  const Eigen::MatrixXd u =
      Eigen::HouseholderQR<Eigen::MatrixXd>(random_block(n, n, 7))
          .householderQ() *
      Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd lam(n);
  for (Index i = 0; i < n; ++i) lam[i] = 1.0 / (1.0 + i);
  const DenseSpectralOperator op(u, lam);
  const Eigen::MatrixXd direct = u * lam.asDiagonal() * u.transpose();
  const Eigen::MatrixXd via_apply = op.apply(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd via_densify = densify(op);
  const double scale = direct.cwiseAbs().maxCoeff();
  CHECK((via_apply - direct).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((via_densify - direct).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("densify does not touch the counters") {
  const DiagonalOperator op = identity_operator(8);
  (void)densify(op);
  (void)exact_trace(op);
  CHECK(op.matvec_count() == 0);
}

TEST_CASE("exact answers need a cache or a small dimension") {
  const CallbackOperator op(
      8192, true, false,
      [](const double* x, double* y, Index n, Index k) {
        std::copy(x, x + n * k, y);
      },
      nullptr);
  CHECK_THROWS_AS(exact_trace(op), ContractViolation);
}

TEST_CASE("callback operator routes through the function pointers") {
  Eigen::Vector3d d(1.0, 2.0, 3.0);
  const CallbackOperator op(
      3, true, true,
      [&d](const double* x, double* y, Index n, Index k) {
        for (Index j = 0; j < k; ++j) {
          for (Index i = 0; i < n; ++i) y[j * n + i] = d[i] * x[j * n + i];
        }
      },
      nullptr);
  const Eigen::MatrixXd out = op.apply(Eigen::MatrixXd::Identity(3, 3));
  CHECK((out - Eigen::MatrixXd(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(exact_trace(op) == doctest::Approx(6.0));
}

TEST_CASE("concurrent read-only application keeps counters exact") {
  const DenseSpectralOperator op = [] {
    Eigen::MatrixXd u =
        Eigen::HouseholderQR<Eigen::MatrixXd>(random_block(32, 32, 12))
            .householderQ() *
        Eigen::MatrixXd::Identity(32, 32);
    return DenseSpectralOperator(std::move(u), Eigen::VectorXd::Ones(32));
  }();
  const Eigen::MatrixXd x = random_block(32, 3, 13);
  const Eigen::MatrixXd want = op.apply(x);
  op.reset_counters();
  std::vector<std::thread> pool;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        if ((op.apply(x) - want).cwiseAbs().maxCoeff() != 0.0) ++mismatches;
      }
    });
  }
  for (auto& t : pool) t.join();
  CHECK(mismatches.load() == 0);
  CHECK(op.matvec_count() == 4 * 50 * 3);
}

TEST_CASE("psd flag follows the sign of the diagonal") {
  Eigen::VectorXd d(3);
  d << 1.0, -2.0, 3.0;
  const DiagonalOperator op(d);
  CHECK(op.symmetric_hint());
  CHECK(!op.psd_hint());
}
