#include "fluxring/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fluxring/kernels.hpp"

namespace fluxring {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTol = 1e-13;  // relative to the largest input entry

double max_offdiag(const ComplexMatrix& a) {
  double worst = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(a(i, j)));
  return worst;
}

}  // namespace

std::vector<cplx> EigenDecomposition::vector(std::size_t k) const {
  std::vector<cplx> v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
  return v;
}

// Cyclic-by-row complex Jacobi. Each rotation zeroes one off-diagonal pair
// with the unitary U spanning the (p, q) plane,
//   U[:,p] = (c, -s e^{-i phi}),  U[:,q] = (s, c e^{-i phi}),
// where phi is the phase of A[p][q]; the dephased problem reduces to the real
// symmetric rotation with tan(theta) picked as the smaller root. Rows of the
// working matrix and of the accumulated W = Q^dagger are contiguous, so both
// updates run through the rot2 kernel; the column update walks a stride.
EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
  if (!h.square()) throw std::invalid_argument("eig_hermitian: matrix must be square");
  if (h.hermiticity_error() > 1e-12)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within 1e-12");

  const std::size_t n = h.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  // Work on the symmetrized copy so the sub-1e-12 asymmetry of the input
  // cannot leak into the sweep.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  ComplexMatrix w = ComplexMatrix::identity(n);  // W = Q^dagger, rows updated in place

  const double tol = kOffDiagTol * std::max(1.0, a.max_abs());
  bool converged = max_offdiag(a) <= tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < n - 1; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= tol) continue;

        const cplx phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- U^dagger A: rows p and q.
        const cplx rb = -s * phase;       // row_p += rb * row_q
        const cplx rd = c * phase;        // row_q scale on old row_q
        kernels::rot2(n, c, rb, s, rd, a.row(p), a.row(q));
        kernels::rot2(n, c, rb, s, rd, w.row(p), w.row(q));

        // A <- A U: columns p and q.
        const cplx cphase = std::conj(phase);
        for (std::size_t i = 0; i < n; ++i) {
          const cplx up = a(i, p);
          const cplx uq = a(i, q);
          a(i, p) = c * up - s * cphase * uq;
          a(i, q) = s * up + c * cphase * uq;
        }

        // The rotated 2x2 corner in closed form (keeps the diagonal real).
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    converged = max_offdiag(a) <= tol;
  }

  if (!converged) {
    std::ostringstream msg;
    msg << "eig_hermitian: no convergence for " << n << "x" << n << " matrix after "
        << kMaxSweeps << " sweeps, off-diagonal residual " << max_offdiag(a);
    throw NumericalError(msg.str());
  }

  // Ascending eigenvalue order with a stable tie-break on the working index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();

    // Eigenvector k is conj(row src of W); fix its phase on the largest
    // component (first index wins on exact magnitude ties).
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(w(src, i));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    const cplx lead = std::conj(w(src, imax));
    const cplx fix = best > 0.0 ? std::conj(lead) / std::abs(lead) : cplx{1.0};
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = fix * std::conj(w(src, i));
  }
  out.vectors.set_dims(h.dims().empty() ? std::vector<std::size_t>{n} : h.dims());
  return out;
}

}  // namespace fluxring
