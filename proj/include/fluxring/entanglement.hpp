#pragma once

#include <optional>
#include <span>
#include <utility>

#include "fluxring/spectra.hpp"
#include "fluxring/tensor.hpp"

namespace fluxring {

enum class EntropyBase { bits, nats };

struct EntropyValue {
  double value = 0.0;
  EntropyBase base = EntropyBase::bits;
};

/// Von Neumann entropy -sum p log p over the eigenvalues of rho. Eigenvalues
/// below 1e-14 are clamped to zero; an eigenvalue below -1e-10 means rho is
/// not a state and raises std::invalid_argument.
EntropyValue von_neumann_entropy(const DensityOperator& rho,
                                 EntropyBase base = EntropyBase::bits);

/// Tr rho^2, in [1/d, 1].
double purity(const DensityOperator& rho);

struct EntanglementReport {
  EntropyValue entropy;
  double purity = 1.0;
  /// Best-matching Bell state and its fidelity, when the full state is a
  /// two-qubit pure state.
  std::optional<std::pair<BellState, double>> dominant_bell;
};

/// Partial trace onto `keep`, plus entropy and purity of the reduction, in
/// one pass.
EntanglementReport entanglement_report(const StateVector& state,
                                       std::span<const std::size_t> keep,
                                       EntropyBase base = EntropyBase::bits);

}  // namespace fluxring
