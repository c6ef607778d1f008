#include "xtrace/estimators.hpp"

#include <cmath>
#include <limits>

#include "xtrace/summation.hpp"

namespace xtrace {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::VectorXd column_dots(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b).colwise().sum().transpose();
}

TraceReport finish_report(std::vector<double> per_sample, Index matvecs) {
  TraceReport rep;
  rep.estimate = compensated_mean(per_sample);
  if (per_sample.size() >= 2) rep.err_est = error_estimate(per_sample);
  rep.per_sample = std::move(per_sample);
  rep.matvecs_used = matvecs;
  return rep;
}

void require_psd(const LinearOperator& op, const char* who) {
  if (!op.psd_hint()) {
    throw ContractViolation(std::string(who) +
                            " requires an operator with the psd hint set");
  }
}

// Symmetrized Gram matrix with the stabilizing shift, Cholesky-factorized.
// The shift is eps*k * tr(H)/k, added before factorization; an indefinite
// result after the shift is reported as degenerate input.
Eigen::LLT<Eigen::MatrixXd> stabilized_cholesky(Eigen::MatrixXd& h_sym) {
  const Index k = h_sym.rows();
  h_sym = 0.5 * (h_sym + h_sym.transpose()).eval();
  const double shift = (kEps * static_cast<double>(k)) * h_sym.trace() /
                       static_cast<double>(k);
  Eigen::MatrixXd shifted = h_sym;
  shifted.diagonal().array() += shift;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw DegenerateInput(
        "gram matrix indefinite after stabilizing shift; input is not "
        "numerically psd");
  }
  return llt;
}

}  // namespace

double error_estimate(std::span<const double> per_sample) {
  const auto l = static_cast<Index>(per_sample.size());
  if (l < 2) {
    throw ContractViolation("error_estimate needs at least two samples");
  }
  const double mean = compensated_mean(per_sample);
  CompensatedSum acc;
  for (double t : per_sample) {
    const double dev = t - mean;
    acc.add(dev * dev);
  }
  return std::sqrt(acc.value() /
                   (static_cast<double>(l) * static_cast<double>(l - 1)));
}

// --------------------------------------------------------------- hutch ----

TraceReport hutch(const LinearOperator& op, const TestMatrix& tm) {
  const Index m = tm.cols();
  const Eigen::MatrixXd y = op.apply(tm.omega);
  const Eigen::VectorXd quads = column_dots(tm.omega, y);
  return finish_report({quads.begin(), quads.end()}, m);
}

TraceReport hutch(const LinearOperator& op, Index m, Distribution dist,
                  std::uint64_t seed) {
  if (m < 1) throw ContractViolation("hutch: m must be >= 1");
  return hutch(op, sample_test_matrix(dist, op.dim(), m, seed));
}

// ----------------------------------------------------------------- lra ----

TraceReport lra_trace(const LinearOperator& op, const TestMatrix& tm) {
  const Index k = tm.cols();
  const Eigen::MatrixXd y = op.apply(tm.omega);
  const ThinQr qr = thin_qr(y);
  const Eigen::MatrixXd z = op.apply(qr.q);
  TraceReport rep;
  rep.estimate = qr.q.cwiseProduct(z).sum();  // tr(Q^T A Q)
  rep.matvecs_used = 2 * k;
  return rep;
}

TraceReport lra_trace(const LinearOperator& op, Index m, Distribution dist,
                      std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) {
    throw ContractViolation("lra_trace: m must be even and >= 2");
  }
  return lra_trace(op, sample_test_matrix(dist, op.dim(), m / 2, seed));
}

// ------------------------------------------------------------- hutch++ ----

TraceReport hutchpp(const LinearOperator& op, const TestMatrix& tm) {
  if (tm.cols() % 2 != 0 || tm.cols() < 2) {
    throw ContractViolation("hutchpp: test matrix needs 2m/3 columns");
  }
  const Index k = tm.cols() / 2;
  const auto residual_block = tm.omega.leftCols(k);
  const auto sketch_block = tm.omega.rightCols(k);

  const Eigen::MatrixXd y = op.apply(sketch_block);
  const ThinQr qr = thin_qr(y);
  const Eigen::MatrixXd z = op.apply(qr.q);
  const double low_rank_trace = qr.q.cwiseProduct(z).sum();

  Eigen::MatrixXd g = residual_block;
  g.noalias() -= qr.q * (qr.q.transpose() * residual_block);
  const Eigen::MatrixXd ag = op.apply(g);
  const double residual_trace =
      g.cwiseProduct(ag).sum() / static_cast<double>(k);

  TraceReport rep;
  rep.estimate = low_rank_trace + residual_trace;
  rep.matvecs_used = 3 * k;
  return rep;
}

TraceReport hutchpp(const LinearOperator& op, Index m, Distribution dist,
                    std::uint64_t seed) {
  if (m < 3 || m % 3 != 0) {
    throw ContractViolation("hutchpp: m must be divisible by 3");
  }
  return hutchpp(op, sample_test_matrix(dist, op.dim(), 2 * (m / 3), seed));
}

// -------------------------------------------------------------- xtrace ----

namespace detail {

TraceReport xtrace_from_parts(Index n, const Eigen::MatrixXd& omega,
                              const SketchState& st, const Eigen::MatrixXd& z,
                              bool normalize, Index matvecs_used) {
  const Index k = omega.cols();
  if (normalize && sketch_rank_deficient(st.r, n)) {
    throw DegenerateInput(
        "xtrace: sketch is numerically rank deficient; the normalized "
        "variant cannot assign rank(Q_i) = k-1");
  }

  const Eigen::MatrixXd h = st.q.transpose() * z;     // Q^T A Q
  const Eigen::MatrixXd t = z.transpose() * omega;    // (A Q)^T Omega
  const Eigen::MatrixXd hw = h * st.w;
  const Eigen::MatrixXd hs = h * st.s;

  const Eigen::VectorXd d_sw = column_dots(st.s, st.w);
  const Eigen::VectorXd d_tw = column_dots(t, st.w);
  const Eigen::VectorXd d_st = column_dots(st.s, t);
  const Eigen::VectorXd d_wr = column_dots(st.w, st.r);
  const Eigen::VectorXd d_whw = column_dots(st.w, hw);
  const Eigen::VectorXd d_shw = column_dots(st.s, hw);
  const Eigen::VectorXd d_whs = column_dots(st.w, hs);
  const Eigen::VectorXd d_shs = column_dots(st.s, hs);
  const Eigen::VectorXd d_oy = column_dots(omega, st.y);
  const double trace_h = h.trace();

  std::vector<double> per_sample(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    // tr(Q_i^T A Q_i) through the rank-one downdate of Q Q^T.
    const double low_rank = trace_h - d_shs[i];
    // w_i^T (I - P_i) A (I - P_i) w_i expanded through the shared factors:
    // the four pieces are w^T A w, w^T P A w, w^T A P w and w^T P A P w.
    const double quad = d_oy[i];
    const double left_proj = d_wr[i] - d_sw[i] * st.d[i];
    const double right_proj = d_tw[i] - d_st[i] * d_sw[i];
    const double both_proj = d_whw[i] - d_sw[i] * d_shw[i] -
                             d_whs[i] * d_sw[i] +
                             d_sw[i] * d_sw[i] * d_shs[i];
    const double residual = quad - left_proj - right_proj + both_proj;
    double scale = 1.0;
    if (normalize) {
      const double mu_norm2 = omega.col(i).squaredNorm() -
                              st.w.col(i).squaredNorm() + d_sw[i] * d_sw[i];
      scale = static_cast<double>(n - k + 1) / mu_norm2;
    }
    per_sample[static_cast<std::size_t>(i)] = low_rank + scale * residual;
  }
  return finish_report(std::move(per_sample), matvecs_used);
}

}  // namespace detail

TraceReport xtrace(const LinearOperator& op, const TestMatrix& tm,
                   bool normalize) {
  const Index k = tm.cols();
  if (k < 2) throw ContractViolation("xtrace: needs at least two vectors");
  const Eigen::MatrixXd y = op.apply(tm.omega);
  const SketchState st = build_sketch(tm.omega, y);
  const Eigen::MatrixXd z = op.apply(st.q);
  return detail::xtrace_from_parts(op.dim(), tm.omega, st, z, normalize,
                                   2 * k);
}

TraceReport xtrace(const LinearOperator& op, Index m, Distribution dist,
                   bool normalize, std::uint64_t seed) {
  if (m < 4 || m % 2 != 0) {
    throw ContractViolation("xtrace: m must be even and >= 4");
  }
  return xtrace(op, sample_test_matrix(dist, op.dim(), m / 2, seed),
                normalize);
}

// ----------------------------------------------------------- xnystrace ----

namespace detail {

TraceReport xnystrace_from_parts(Index n, const Eigen::MatrixXd& omega,
                                 const Eigen::MatrixXd& y, bool normalize,
                                 Index matvecs_used) {
  const Index k = omega.cols();
  if (k > n) throw ContractViolation("xnystrace: m exceeds the dimension");

  Eigen::MatrixXd h = omega.transpose() * y;
  const Eigen::LLT<Eigen::MatrixXd> llt = stabilized_cholesky(h);

  const Eigen::MatrixXd linv =
      llt.matrixL().solve(Eigen::MatrixXd::Identity(k, k));
  // Y L^{-T}: trace of the full Nystrom approximation is its squared norm.
  const Eigen::MatrixXd bt = llt.matrixL().solve(y.transpose());
  const double full_trace = bt.squaredNorm();
  // Column i of Y H^{-1}; its norm gives the rank-one trace downdate.
  const Eigen::MatrixXd yhinv = bt.transpose() * linv;
  const Eigen::VectorXd downdate = yhinv.colwise().squaredNorm().transpose();
  const Eigen::VectorXd hinv_diag = linv.colwise().squaredNorm().transpose();

  Eigen::VectorXd residual(k);
  if (!normalize) {
    // w_i^T (A - A<Omega_-i>) w_i collapses to 1 / (H^{-1})_ii.
    residual = hinv_diag.cwiseInverse();
  } else {
    // Normalized residual (N-k+1) u_i^T (A - A<Omega_-i>) u_i, where u_i is
    // the unit vector in range(Omega) orthogonal to range(Omega_-i); the
    // rescaled complement projection of w_i is parallel to u_i.  With
    // g_i = R^{-1} s_i from the QR of Omega, u_i = Omega g_i, so every
    // quadratic form reduces to the Gram matrix.
    const ThinQr qr = thin_qr(omega);
    if (sketch_rank_deficient(qr.r, n)) {
      throw DegenerateInput(
          "xnystrace: test matrix is numerically rank deficient; the "
          "normalized variant cannot assign rank(P_i) = k-1");
    }
    const NullspaceVectors ns = nullspace_unit_vectors(qr.r);
    const Eigen::MatrixXd g =
        qr.r.triangularView<Eigen::Upper>().solve(ns.s);
    const Eigen::MatrixXd w = h * g;  // columns H g_i = Y^T u_i
    const Eigen::MatrixXd c1 = llt.matrixL().solve(w);
    const Eigen::MatrixXd c2 = llt.matrixU().solve(c1);  // H^{-1} w
    const Eigen::VectorXd quad = column_dots(g, w);      // u_i^T A u_i
    const Eigen::VectorXd nys_quad =
        c1.colwise().squaredNorm().transpose();  // w_i^T H^{-1} w_i
    for (Index i = 0; i < k; ++i) {
      const double cross = c2(i, i);  // w_i^T H^{-1} e_i
      const double nystrom_part =
          nys_quad[i] - cross * cross / hinv_diag[i];
      residual[i] = static_cast<double>(n - k + 1) *
                    (quad[i] - nystrom_part);
    }
  }

  std::vector<double> per_sample(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    per_sample[static_cast<std::size_t>(i)] =
        (full_trace - downdate[i] / hinv_diag[i]) + residual[i];
  }
  return finish_report(std::move(per_sample), matvecs_used);
}

}  // namespace detail

TraceReport xnystrace(const LinearOperator& op, const TestMatrix& tm,
                      bool normalize) {
  require_psd(op, "xnystrace");
  const Index m = tm.cols();
  if (m < 2) throw ContractViolation("xnystrace: needs at least two vectors");
  const Eigen::MatrixXd y = op.apply(tm.omega);
  return detail::xnystrace_from_parts(op.dim(), tm.omega, y, normalize, m);
}

TraceReport xnystrace(const LinearOperator& op, Index m, Distribution dist,
                      bool normalize, std::uint64_t seed) {
  if (m < 2) throw ContractViolation("xnystrace: m must be >= 2");
  return xnystrace(op, sample_test_matrix(dist, op.dim(), m, seed), normalize);
}

// ----------------------------------------------------------- nystrom++ ----

TraceReport nystrompp(const LinearOperator& op, const TestMatrix& tm) {
  require_psd(op, "nystrompp");
  if (tm.cols() % 2 != 0 || tm.cols() < 2) {
    throw ContractViolation("nystrompp: test matrix needs m (even) columns");
  }
  const Index k = tm.cols() / 2;
  if (k > op.dim()) {
    throw ContractViolation("nystrompp: sketch wider than the operator");
  }
  const auto sketch_block = tm.omega.leftCols(k);
  const auto residual_block = tm.omega.rightCols(k);

  const Eigen::MatrixXd y1 = op.apply(sketch_block);
  Eigen::MatrixXd h = sketch_block.transpose() * y1;
  const Eigen::LLT<Eigen::MatrixXd> llt = stabilized_cholesky(h);
  const double nystrom_trace =
      llt.matrixL().solve(y1.transpose()).squaredNorm();

  const Eigen::MatrixXd y2 = op.apply(residual_block);
  const Eigen::VectorXd quads = column_dots(residual_block, y2);
  const Eigen::MatrixXd cross =
      llt.matrixL().solve(y1.transpose() * residual_block);
  CompensatedSum acc;
  for (Index i = 0; i < k; ++i) {
    acc.add(quads[i] - cross.col(i).squaredNorm());
  }

  TraceReport rep;
  rep.estimate = nystrom_trace + acc.value() / static_cast<double>(k);
  rep.matvecs_used = 2 * k;
  return rep;
}

TraceReport nystrompp(const LinearOperator& op, Index m, Distribution dist,
                      std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) {
    throw ContractViolation("nystrompp: m must be even and >= 2");
  }
  return nystrompp(op, sample_test_matrix(dist, op.dim(), m, seed));
}

// ------------------------------------------------------------ diagonal ----

DiagReport bks_diag(const LinearOperator& op, const TestMatrix& tm) {
  const Index m = tm.cols();
  const Eigen::MatrixXd y = op.apply(tm.omega);
  const Eigen::VectorXd numer = tm.omega.cwiseProduct(y).rowwise().sum();
  const Eigen::VectorXd denom =
      tm.omega.cwiseProduct(tm.omega).rowwise().sum();
  if ((denom.array() == 0.0).any()) {
    throw DegenerateInput("bks_diag: zero denominator entry");
  }
  DiagReport rep;
  rep.estimate = numer.cwiseQuotient(denom);
  rep.matvecs_used = m;
  rep.adjoint_matvecs_used = 0;
  return rep;
}

DiagReport bks_diag(const LinearOperator& op, Index m, Distribution dist,
                    std::uint64_t seed) {
  if (m < 1) throw ContractViolation("bks_diag: m must be >= 1");
  return bks_diag(op, sample_test_matrix(dist, op.dim(), m, seed));
}

DiagReport xdiag(const LinearOperator& op, const TestMatrix& tm) {
  const Index k = tm.cols();
  if (k < 2) throw ContractViolation("xdiag: needs at least two vectors");
  if ((tm.omega.array() == 0.0).any()) {
    throw DegenerateInput("xdiag: zero test-vector entry");
  }
  const Eigen::MatrixXd y = op.apply(tm.omega);
  const SketchState st = build_sketch(tm.omega, y);
  const Eigen::MatrixXd v = op.apply_adjoint(st.q);  // A^T Q

  const Eigen::MatrixXd qs = st.q * st.s;
  const Eigen::MatrixXd vs = v * st.s;
  // diag(Q_i Q_i^T A) = rowsum(Q o V) - (Q s_i) o (V s_i).
  const Eigen::VectorXd base = st.q.cwiseProduct(v).rowwise().sum();
  const Eigen::VectorXd correction =
      qs.cwiseProduct(vs).rowwise().sum() / static_cast<double>(k);
  // The leave-one-out residual (I - P_i) A w_i reduces to d_i * Q s_i.
  Eigen::VectorXd residual = Eigen::VectorXd::Zero(op.dim());
  for (Index i = 0; i < k; ++i) {
    residual.array() +=
        st.d[i] * qs.col(i).array() / tm.omega.col(i).array();
  }
  residual /= static_cast<double>(k);

  DiagReport rep;
  rep.estimate = base - correction + residual;
  rep.matvecs_used = k;
  rep.adjoint_matvecs_used = k;
  return rep;
}

DiagReport xdiag(const LinearOperator& op, Index m, std::uint64_t seed) {
  if (m < 4 || m % 2 != 0) {
    throw ContractViolation("xdiag: m must be even and >= 4");
  }
  return xdiag(op,
               sample_test_matrix(Distribution::Signs, op.dim(), m / 2, seed));
}

}  // namespace xtrace
