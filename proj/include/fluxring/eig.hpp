#pragma once

#include "fluxring/types.hpp"

namespace fluxring {

/// Spectral decomposition of a Hermitian matrix.
///
/// values are ascending; vectors holds the matching orthonormal eigenvectors
/// as columns. Output is deterministic: degenerate eigenvalues keep the
/// working order of the sweep (stable tie-break), and each vector's phase is
/// fixed so its largest-magnitude component is real and non-negative.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::size_t dim() const { return values.size(); }
  /// Eigenvector k as a contiguous copy.
  std::vector<cplx> vector(std::size_t k) const;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// The input must be Hermitian within 1e-12 (throws std::invalid_argument
/// otherwise). Sweeps stop once every off-diagonal magnitude falls below
/// 1e-13 relative to the largest input entry; more than 100 sweeps raises
/// NumericalError carrying the matrix size and remaining residual.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

}  // namespace fluxring
