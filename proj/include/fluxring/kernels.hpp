#pragma once

#include <cstddef>
#include <vector>

#include "fluxring/types.hpp"

namespace fluxring::kernels {

/// Inner-loop arithmetic comes in a scalar reference flavor and an AVX2+FMA
/// flavor. The best supported backend is picked once at startup; select() is
/// a hook for equivalence tests and benchmarking, not a per-call switch.
enum class Backend { scalar, avx2 };

const char* name(Backend b);

/// Backends usable on this machine (scalar always; avx2 when compiled in and
/// the CPU reports support).
std::vector<Backend> available();

/// Best available backend.
Backend detect();

Backend active();
void select(Backend b);  // throws std::invalid_argument if unsupported here

/// y[i] += a * x[i]
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);

/// sum_i x[i] * y[i]  (no conjugation)
cplx dotu(std::size_t n, const cplx* x, const cplx* y);

/// sum_i conj(x[i]) * y[i]
cplx dotc(std::size_t n, const cplx* x, const cplx* y);

/// Simultaneous plane-rotation update of two vectors:
///   (u[i], v[i]) <- (a*u[i] + b*v[i], c*u[i] + d*v[i])
void rot2(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* u, cplx* v);

namespace detail {

struct Dispatch {
  void (*axpy)(std::size_t, cplx, const cplx*, cplx*);
  cplx (*dotu)(std::size_t, const cplx*, const cplx*);
  cplx (*dotc)(std::size_t, const cplx*, const cplx*);
  void (*rot2)(std::size_t, cplx, cplx, cplx, cplx, cplx*, cplx*);
};

extern const Dispatch scalar_table;
#if FLUXRING_HAVE_AVX2
extern const Dispatch avx2_table;
bool avx2_supported();
#endif

}  // namespace detail

}  // namespace fluxring::kernels
