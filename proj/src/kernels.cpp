#include "fluxring/kernels.hpp"

#include <stdexcept>

namespace fluxring::kernels {
namespace {

const detail::Dispatch* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table;
    case Backend::avx2:
#if FLUXRING_HAVE_AVX2
      if (detail::avx2_supported()) return &detail::avx2_table;
#endif
      return nullptr;
  }
  return nullptr;
}

struct State {
  Backend backend;
  const detail::Dispatch* table;
};

State& state() {
  static State s = [] {
    const Backend best = detect();
    return State{best, table_for(best)};
  }();
  return s;
}

}  // namespace

const char* name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "?";
}

std::vector<Backend> available() {
  std::vector<Backend> out{Backend::scalar};
#if FLUXRING_HAVE_AVX2
  if (detail::avx2_supported()) out.push_back(Backend::avx2);
#endif
  return out;
}

Backend detect() {
#if FLUXRING_HAVE_AVX2
  if (detail::avx2_supported()) return Backend::avx2;
#endif
  return Backend::scalar;
}

Backend active() { return state().backend; }

void select(Backend b) {
  const detail::Dispatch* t = table_for(b);
  if (t == nullptr)
    throw std::invalid_argument(std::string("kernel backend not available: ") + name(b));
  state() = {b, t};
}

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) { state().table->axpy(n, a, x, y); }

cplx dotu(std::size_t n, const cplx* x, const cplx* y) { return state().table->dotu(n, x, y); }

cplx dotc(std::size_t n, const cplx* x, const cplx* y) { return state().table->dotc(n, x, y); }

void rot2(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* u, cplx* v) {
  state().table->rot2(n, a, b, c, d, u, v);
}

}  // namespace fluxring::kernels
