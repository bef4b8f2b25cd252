#include "fluxring/entanglement.hpp"

#include <cmath>

#include "fluxring/eig.hpp"

namespace fluxring {
namespace {

constexpr double kEigenvalueClamp = 1e-14;
constexpr double kNegativeTol = -1e-10;

}  // namespace

EntropyValue von_neumann_entropy(const DensityOperator& rho, EntropyBase base) {
  rho.validate();
  const EigenDecomposition eig = eig_hermitian(rho.mat);
  double s = 0.0;
  for (double p : eig.values) {
    if (p < kNegativeTol)
      throw std::invalid_argument("von_neumann_entropy: density operator has eigenvalue " +
                                  std::to_string(p));
    if (p < kEigenvalueClamp) continue;  // 0 log 0 = 0
    s -= p * std::log(p);
  }
  if (base == EntropyBase::bits) s /= std::log(2.0);
  return EntropyValue{s, base};
}

double purity(const DensityOperator& rho) {
  rho.validate();
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho
  double s = 0.0;
  for (const cplx& v : rho.mat.data()) s += std::norm(v);
  return s;
}

EntanglementReport entanglement_report(const StateVector& state,
                                       std::span<const std::size_t> keep, EntropyBase base) {
  const DensityOperator rho = partial_trace(state, keep);
  EntanglementReport report;
  report.entropy = von_neumann_entropy(rho, base);
  report.purity = purity(rho);
  if (state.dims == std::vector<std::size_t>{2, 2}) {
    BellState best = BellState::phi_plus;
    double best_f = -1.0;
    for (BellState b : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus,
                        BellState::psi_minus}) {
      const double f = bell_fidelity(state.amps, b);
      if (f > best_f) {
        best_f = f;
        best = b;
      }
    }
    report.dominant_bell = {best, best_f};
  }
  return report;
}

}  // namespace fluxring
