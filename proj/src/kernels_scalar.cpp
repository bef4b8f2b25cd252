// Scalar reference kernels. These define the semantics the SIMD variants are
// equivalence-tested against.

#include "fluxring/kernels.hpp"

namespace fluxring::kernels {
namespace {

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void rot2_scalar(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* u, cplx* v) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ui = u[i];
    const cplx vi = v[i];
    u[i] = a * ui + b * vi;
    v[i] = c * ui + d * vi;
  }
}

}  // namespace

namespace detail {
const Dispatch scalar_table = {axpy_scalar, dotu_scalar, dotc_scalar, rot2_scalar};
}  // namespace detail

}  // namespace fluxring::kernels
