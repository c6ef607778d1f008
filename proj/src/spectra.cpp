#include "xtrace/spectra.hpp"

#include <cmath>

#include "xtrace/sampling.hpp"

namespace xtrace {

SpectrumKind parse_spectrum(std::string_view name) {
  if (name == "flat") return SpectrumKind::Flat;
  if (name == "poly") return SpectrumKind::Poly;
  if (name == "exp") return SpectrumKind::Exp;
  if (name == "step") return SpectrumKind::Step;
  throw ContractViolation("unknown spectrum kind: " + std::string(name));
}

std::string_view to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::Flat: return "flat";
    case SpectrumKind::Poly: return "poly";
    case SpectrumKind::Exp: return "exp";
    case SpectrumKind::Step: return "step";
  }
  return "?";
}

Eigen::VectorXd spectrum_eigenvalues(const SpectrumSpec& spec) {
  const Index n = spec.dim;
  if (n < 1) throw ContractViolation("spectrum dimension must be >= 1");
  Eigen::VectorXd lambda(n);
  switch (spec.kind) {
    case SpectrumKind::Flat:
      if (n == 1) {
        lambda[0] = spec.flat_high;
      } else {
        const double span = spec.flat_high - spec.flat_low;
        for (Index i = 0; i < n; ++i) {
          lambda[i] = spec.flat_high -
                      span * static_cast<double>(i) / static_cast<double>(n - 1);
        }
      }
      break;
    case SpectrumKind::Poly:
      for (Index i = 0; i < n; ++i) {
        lambda[i] = std::pow(static_cast<double>(i + 1), -spec.poly_exponent);
      }
      break;
    case SpectrumKind::Exp:
      for (Index i = 0; i < n; ++i) {
        lambda[i] = std::pow(spec.exp_decay, static_cast<double>(i));
      }
      break;
    case SpectrumKind::Step:
      for (Index i = 0; i < n; ++i) {
        lambda[i] = i < spec.step_leading ? spec.step_height : spec.step_tail;
      }
      break;
  }
  if (!(lambda.array() > 0.0).all()) {
    throw ContractViolation("spectrum must be strictly positive");
  }
  return lambda;
}

Eigen::MatrixXd haar_orthogonal(Index n, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("haar_orthogonal: n must be >= 1");
  TestMatrix g = sample_test_matrix(Distribution::Gaussian, n, n, seed);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.omega);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& packed = qr.matrixQR();
  // Fix the gauge: flip each column so the matching diagonal entry of R is
  // positive.  Plain QR of a Gaussian matrix is not Haar without this.
  for (Index j = 0; j < n; ++j) {
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

DenseSpectralOperator make_synthetic_operator(const SpectrumSpec& spec,
                                              std::uint64_t seed) {
  return DenseSpectralOperator(haar_orthogonal(spec.dim, seed),
                               spectrum_eigenvalues(spec));
}

}  // namespace xtrace
