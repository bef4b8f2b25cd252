// AVX2+FMA kernel variants. Complex doubles are interleaved (re, im), two per
// 256-bit lane. A complex multiply-accumulate uses the fmaddsub/fmsubadd
// pattern: with ar/ai broadcast and xs = in-lane swap of x,
//   fmaddsub(ar, x, ai*xs) = (ar*xr - ai*xi, ar*xi + ai*xr) = a * x.
// This file is compiled with -mavx2 -mfma; callers gate on cpu support.

#if FLUXRING_HAVE_AVX2

#include <immintrin.h>

#include "fluxring/kernels.hpp"

namespace fluxring::kernels {
namespace {

inline __m256d cmul(__m256d ar, __m256d ai, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// (x*y) per element: xr_dup = (xr, xr), xi_dup = (xi, xi), ys = swap(y):
//   fmaddsub(xr_dup, y, xi_dup*ys) = (xr*yr - xi*yi, xr*yi + xi*yr)
cplx dotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0b1111);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xr, yv, _mm256_mul_pd(xi, ys)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx out{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

// conj(x)*y flips the sign pattern: even lanes add, odd lanes subtract.
cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0b1111);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, ys)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx out{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) out += std::conj(x[i]) * y[i];
  return out;
}

void rot2_avx2(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* u, cplx* v) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  auto* ud = reinterpret_cast<double*>(u);
  auto* vd = reinterpret_cast<double*>(v);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d uv = _mm256_loadu_pd(ud + 2 * i);
    const __m256d vv = _mm256_loadu_pd(vd + 2 * i);
    const __m256d nu = _mm256_add_pd(cmul(ar, ai, uv), cmul(br, bi, vv));
    const __m256d nv = _mm256_add_pd(cmul(cr, ci, uv), cmul(dr, di, vv));
    _mm256_storeu_pd(ud + 2 * i, nu);
    _mm256_storeu_pd(vd + 2 * i, nv);
  }
  for (; i < n; ++i) {
    const cplx ui = u[i];
    const cplx vi = v[i];
    u[i] = a * ui + b * vi;
    v[i] = c * ui + d * vi;
  }
}

}  // namespace

namespace detail {

const Dispatch avx2_table = {axpy_avx2, dotu_avx2, dotc_avx2, rot2_avx2};

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace detail

}  // namespace fluxring::kernels

#endif  // FLUXRING_HAVE_AVX2
