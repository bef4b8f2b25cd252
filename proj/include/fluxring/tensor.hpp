#pragma once

#include <span>

#include "fluxring/types.hpp"

namespace fluxring {

/// Kronecker product. The factor dims of the result are the concatenation of
/// the operands' dims (A's factors leftmost, i.e. most significant).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class PauliOp { identity, x, y, z };

/// Single-site Pauli operator embedded in an n_sites qubit register.
/// Convention: sigma_z |0> = +|0>, sigma_z |1> = -|1>; site 0 is the leftmost
/// (most significant) tensor factor.
ComplexMatrix pauli(PauliOp op, std::size_t site, std::size_t n_sites);

/// Reduced density operator over the kept factors (ascending original order).
/// keep must be a nonempty proper subset of the tensor factors.
DensityOperator partial_trace(const StateVector& psi, std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep);

}  // namespace fluxring
