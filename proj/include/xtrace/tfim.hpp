#ifndef XTRACE_TFIM_HPP
#define XTRACE_TFIM_HPP

#include "xtrace/linop.hpp"
#include "xtrace/types.hpp"

namespace xtrace {

// Transverse-field Ising Hamiltonian on a periodic chain of n sites,
//   H = -sum_i Z_i Z_{i+1} - h sum_i X_i,   dimension 2^n.
// Matvecs walk the Pauli terms with bit manipulation of the basis index,
// O(n 2^n) per vector; the 2^n x 2^n matrix is never stored.
class TfimHamiltonian : public LinearOperator {
 public:
  TfimHamiltonian(int sites, double field);

  int sites() const { return sites_; }
  double field() const { return field_; }
  // Shift b = (1+h) n making H + bI positive semidefinite.
  double psd_shift() const;

 protected:
  void apply_impl(const Eigen::Ref<const Eigen::MatrixXd>& x,
                  Eigen::Ref<Eigen::MatrixXd> y) const override;
  std::optional<double> exact_trace_hint() const override;

 private:
  int sites_;
  double field_;
  Eigen::VectorXd coupling_diag_;  // -sum_i z_i z_{i+1} per basis state
};

TfimHamiltonian make_tfim(int sites, double field);  // 2 <= sites <= 14

// Dense assembly of the same Hamiltonian (sites <= 12), for oracles and for
// building matrix functions of H by eigendecomposition.
Eigen::MatrixXd tfim_dense(int sites, double field);

// Eigendecomposition of H as a spectral operator (sites <= 12).
DenseSpectralOperator tfim_spectral(int sites, double field);

}  // namespace xtrace

#endif
