#include "xtrace/tfim.hpp"

namespace xtrace {

namespace {

Index tfim_dim(int sites) {
  if (sites < 2 || sites > 14) {
    throw ContractViolation("tfim: sites must be in [2, 14]");
  }
  return Index{1} << sites;
}

// z eigenvalue of site i (0-based bit) in basis state b: bit 0 -> +1.
inline int spin(std::uint64_t b, int i) {
  return (b >> i) & 1u ? -1 : 1;
}

}  // namespace

TfimHamiltonian::TfimHamiltonian(int sites, double field)
    : LinearOperator(tfim_dim(sites), true, false),
      sites_(sites),
      field_(field) {
  const Index n = dim();
  coupling_diag_.resize(n);
  for (Index b = 0; b < n; ++b) {
    int s = 0;
    for (int i = 0; i < sites_; ++i) {
      s += spin(static_cast<std::uint64_t>(b), i) *
           spin(static_cast<std::uint64_t>(b), (i + 1) % sites_);
    }
    coupling_diag_[b] = -static_cast<double>(s);
  }
}

double TfimHamiltonian::psd_shift() const {
  return (1.0 + field_) * static_cast<double>(sites_);
}

void TfimHamiltonian::apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                 Eigen::Ref<Eigen::MatrixXd> y) const {
  const Index n = dim();
  for (Index c = 0; c < x.cols(); ++c) {
    auto xc = x.col(c);
    auto yc = y.col(c);
    yc = coupling_diag_.cwiseProduct(xc);
    for (int i = 0; i < sites_; ++i) {
      const Index mask = Index{1} << i;
      for (Index b = 0; b < n; ++b) {
        yc[b] -= field_ * xc[b ^ mask];
      }
    }
  }
}

std::optional<double> TfimHamiltonian::exact_trace_hint() const {
  return 0.0;  // every Pauli string is traceless
}

TfimHamiltonian make_tfim(int sites, double field) {
  return TfimHamiltonian(sites, field);
}

Eigen::MatrixXd tfim_dense(int sites, double field) {
  if (sites > 12) {
    throw ContractViolation("tfim_dense: sites must be <= 12");
  }
  TfimHamiltonian h(sites, field);
  return densify(h);
}

DenseSpectralOperator tfim_spectral(int sites, double field) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tfim_dense(sites, field));
  if (es.info() != Eigen::Success) {
    throw DegenerateInput("tfim eigendecomposition failed");
  }
  return DenseSpectralOperator(es.eigenvectors(), es.eigenvalues());
}

}  // namespace xtrace
