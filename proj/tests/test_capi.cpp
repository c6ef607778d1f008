#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "xtrace/xtrace_c.h"

namespace {

struct Handle {
  xt_operator* p = nullptr;
  ~Handle() {
    if (p) xt_operator_destroy(p);
  }
};

}  // namespace

TEST_CASE("dense operator round trip") {
  const std::vector<double> a = {1, 0, 0, 0, 2, 0, 0, 0, 3};  // column-major
  Handle h;
  REQUIRE(xt_operator_create_dense(a.data(), 3, 1, &h.p) == XT_OK);
  CHECK(xt_operator_dim(h.p) == 3);
  CHECK(xt_operator_is_symmetric(h.p) == 1);
  CHECK(xt_operator_is_psd(h.p) == 1);

  const std::vector<double> x = {1, 1, 1};
  std::vector<double> y(3);
  REQUIRE(xt_operator_apply(h.p, x.data(), 1, y.data()) == XT_OK);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 2.0);
  CHECK(y[2] == 3.0);
  CHECK(xt_operator_matvec_count(h.p) == 1);
  xt_operator_reset_counters(h.p);
  CHECK(xt_operator_matvec_count(h.p) == 0);

  double tr = 0.0;
  REQUIRE(xt_exact_trace(h.p, &tr) == XT_OK);
  CHECK(tr == 6.0);
  std::vector<double> d(3);
  REQUIRE(xt_exact_diag(h.p, d.data()) == XT_OK);
  CHECK(d[1] == 2.0);
}

TEST_CASE("error reporting carries a message") {
  Handle h;
  CHECK(xt_operator_create_dense(nullptr, 3, 0, &h.p) ==
        XT_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(xt_last_error()) > 0);
  CHECK(xt_operator_create_synthetic("nope", 8, 0, &h.p) ==
        XT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("synthetic operator and spectrum eigenvalues") {
  Handle h;
  REQUIRE(xt_operator_create_synthetic("exp", 64, 7, &h.p) == XT_OK);
  CHECK(xt_operator_is_psd(h.p) == 1);
  std::vector<double> lam(64);
  REQUIRE(xt_spectrum_eigenvalues("exp", 64, lam.data()) == XT_OK);
  double want = 0.0;
  for (double l : lam) want += l;
  double tr = 0.0;
  REQUIRE(xt_exact_trace(h.p, &tr) == XT_OK);
  CHECK(tr == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("trace estimators through the C surface") {
  Handle h;
  REQUIRE(xt_operator_create_synthetic("exp", 100, 3, &h.p) == XT_OK);
  double exact = 0.0;
  REQUIRE(xt_exact_trace(h.p, &exact) == XT_OK);

  xt_trace_result res;
  std::vector<double> samples(40);
  for (const char* est : {"hutch", "lra", "hutchpp", "nystrompp", "xtrace",
                          "xnystrace"}) {
    REQUIRE_MESSAGE(xt_trace_estimate(h.p, est, 12, "gaussian", 0, 5, &res,
                                      samples.data()) == XT_OK,
                    xt_last_error());
    CHECK(res.matvecs == 12);
    CHECK(std::isfinite(res.estimate));
    // Same seed, same answer.
    xt_trace_result res2;
    REQUIRE(xt_trace_estimate(h.p, est, 12, "gaussian", 0, 5, &res2, nullptr) ==
            XT_OK);
    CHECK(res.estimate == res2.estimate);
    if (res.per_sample_len > 0) {
      double mean = 0.0;
      for (int64_t i = 0; i < res.per_sample_len; ++i) mean += samples[i];
      mean /= static_cast<double>(res.per_sample_len);
      CHECK(mean == doctest::Approx(res.estimate).epsilon(1e-12));
    } else {
      CHECK(std::isnan(res.err_est));
    }
  }
  CHECK(xt_trace_estimate(h.p, "unknown", 12, "gaussian", 0, 5, &res,
                          nullptr) == XT_ERR_INVALID_ARGUMENT);
  CHECK(xt_trace_estimate(h.p, "hutchpp", 10, "gaussian", 0, 5, &res,
                          nullptr) == XT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("degenerate inputs map to the degenerate status") {
  // Indefinite matrix with a trusted psd hint.
  const int64_t n = 16;
  std::vector<double> a(n * n, 0.0);
  for (int64_t i = 0; i < n; ++i) a[i * n + i] = (i % 2 == 0) ? 1.0 : -1.0;
  Handle h;
  REQUIRE(xt_operator_create_dense(a.data(), n, 1, &h.p) == XT_OK);
  xt_trace_result res;
  CHECK(xt_trace_estimate(h.p, "xnystrace", 8, "gaussian", 0, 1, &res,
                          nullptr) == XT_ERR_DEGENERATE);
}

TEST_CASE("diagonal estimators through the C surface") {
  const std::vector<double> d = {2.0, -1.0, 0.5, 4.0};
  Handle h;
  REQUIRE(xt_operator_create_diagonal(d.data(), 4, &h.p) == XT_OK);
  std::vector<double> est(4);
  xt_trace_result info;
  REQUIRE(xt_diag_estimate(h.p, "bks", 6, "signs", 3, est.data(), &info) ==
          XT_OK);
  for (int i = 0; i < 4; ++i) CHECK(est[i] == doctest::Approx(d[i]));
  CHECK(info.matvecs == 6);
  CHECK(info.adjoint_matvecs == 0);

  REQUIRE(xt_diag_estimate(h.p, "xdiag", 8, nullptr, 3, est.data(), &info) ==
          XT_OK);
  CHECK(info.matvecs == 4);
  CHECK(info.adjoint_matvecs == 4);
}

TEST_CASE("tfim operators and eigenvalues") {
  Handle ham;
  REQUIRE(xt_operator_create_tfim(4, 1.0, &ham.p) == XT_OK);
  CHECK(xt_operator_dim(ham.p) == 16);
  double tr = 0.0;
  REQUIRE(xt_exact_trace(ham.p, &tr) == XT_OK);
  CHECK(tr == 0.0);

  std::vector<double> eig(16);
  REQUIRE(xt_tfim_eigenvalues(4, 1.0, eig.data()) == XT_OK);
  const double beta = 0.5;
  const double b = xt_tfim_psd_shift(4, 1.0);
  CHECK(b == doctest::Approx(8.0));
  double want = 0.0;
  for (double lam : eig) want += std::exp(-beta * (lam + b));

  Handle boltz;
  REQUIRE(xt_operator_create_tfim_boltzmann(4, 1.0, beta, 0, &boltz.p) ==
          XT_OK);
  CHECK(xt_operator_is_psd(boltz.p) == 1);
  double zt = 0.0;
  REQUIRE(xt_exact_trace(boltz.p, &zt) == XT_OK);
  CHECK(zt == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("adjacency function operators") {
  // Complete graph K4: (M^3)_ii / 2 counts the 3 triangles at each node.
  const std::string path =
      (std::filesystem::temp_directory_path() / "capi_k4.mtx").string();
  {
    std::ofstream f(path);
    f << "%%MatrixMarket matrix coordinate pattern symmetric\n"
         "4 4 6\n2 1\n3 1\n4 1\n3 2\n4 2\n4 3\n";
  }
  Handle tri;
  REQUIRE_MESSAGE(xt_operator_create_adjacency_function(
                      path.c_str(), "cube_half", &tri.p) == XT_OK,
                  xt_last_error());
  std::vector<double> diag(4);
  REQUIRE(xt_exact_diag(tri.p, diag.data()) == XT_OK);
  for (double v : diag) CHECK(v == doctest::Approx(3.0).epsilon(1e-10));

  // The empty graph has exp(M) = I.
  const std::string empty_path =
      (std::filesystem::temp_directory_path() / "capi_empty.mtx").string();
  {
    std::ofstream f(empty_path);
    f << "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 0\n";
  }
  Handle sc;
  REQUIRE(xt_operator_create_adjacency_function(empty_path.c_str(), "exp",
                                                &sc.p) == XT_OK);
  std::vector<double> ones(3);
  REQUIRE(xt_exact_diag(sc.p, ones.data()) == XT_OK);
  for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  Handle bad;
  CHECK(xt_operator_create_adjacency_function(path.c_str(), "sqrt", &bad.p) ==
        XT_ERR_INVALID_ARGUMENT);
  CHECK(xt_operator_create_adjacency_function("/nope.mtx", "exp", &bad.p) ==
        XT_ERR_IO);
  std::filesystem::remove(path);
  std::filesystem::remove(empty_path);
}

TEST_CASE("adaptive driver through the C surface") {
  Handle h;
  REQUIRE(xt_operator_create_synthetic("exp", 200, 9, &h.p) == XT_OK);
  double exact = 0.0;
  REQUIRE(xt_exact_trace(h.p, &exact) == XT_OK);
  xt_trace_result res;
  int converged = 0;
  int64_t rounds = 0;
  REQUIRE_MESSAGE(xt_trace_adaptive(h.p, "xnystrace", "gaussian", 0, 2, 8,
                                    1e-5, 512, &res, &converged, &rounds) ==
                      XT_OK,
                  xt_last_error());
  CHECK(converged == 1);
  CHECK(rounds >= 1);
  CHECK(std::abs(res.estimate - exact) <= 1e-3 * exact);
}

TEST_CASE("callback operator joins the estimators") {
  static const int64_t n = 32;
  const auto apply = [](void*, const double* x, double* y, int64_t dim,
                        int64_t k) {
    // diag(1, 1/2, 1/3, ...)
    for (int64_t j = 0; j < k; ++j) {
      for (int64_t i = 0; i < dim; ++i) {
        y[j * dim + i] = x[j * dim + i] / static_cast<double>(i + 1);
      }
    }
  };
  Handle h;
  REQUIRE(xt_operator_create_callback(n, 1, 1, apply, nullptr, nullptr,
                                      &h.p) == XT_OK);
  double exact = 0.0;
  REQUIRE(xt_exact_trace(h.p, &exact) == XT_OK);
  xt_trace_result res;
  REQUIRE(xt_trace_estimate(h.p, "xnystrace", 16, "gaussian", 1, 3, &res,
                            nullptr) == XT_OK);
  CHECK(std::abs(res.estimate - exact) <= 0.3 * exact);
}

TEST_CASE("admissible budgets and seed splitting") {
  CHECK(xt_admissible_budget("hutch", 7) == 7);
  CHECK(xt_admissible_budget("hutchpp", 10) == 9);
  CHECK(xt_admissible_budget("hutchpp", 2) == 0);
  CHECK(xt_admissible_budget("xtrace", 9) == 8);
  CHECK(xt_admissible_budget("xtrace", 3) == 0);
  CHECK(xt_admissible_budget("xdiag", 13) == 12);
  CHECK(xt_admissible_budget("lra", 3) == 2);
  CHECK(xt_admissible_budget("nystrompp", 9) == 8);
  CHECK(xt_admissible_budget("xnystrace", 2) == 2);
  CHECK(xt_admissible_budget("unknown", 9) == 0);
  CHECK(xt_split_seed(1, 2) != xt_split_seed(1, 3));
  CHECK(xt_split_seed(1, 2) == xt_split_seed(1, 2));
  CHECK(std::string(xt_version()).size() > 0);
}
