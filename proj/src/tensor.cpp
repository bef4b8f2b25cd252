#include "fluxring/tensor.hpp"

#include <algorithm>

#include "fluxring/kernels.hpp"

namespace fluxring {
namespace {

// Offsets of the kept / traced multi-indices into the flat index, so that
// flat = keep_offset[a] + traced_offset[c] for every (a, c) split.
struct Split {
  std::vector<std::size_t> keep_dims;
  std::vector<std::size_t> keep_offsets;
  std::vector<std::size_t> traced_offsets;
};

Split split_factors(std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());
  keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()), keep_sorted.end());
  if (keep_sorted.empty() || keep_sorted.size() >= dims.size())
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  if (keep_sorted.back() >= dims.size())
    throw std::invalid_argument("partial_trace: keep index out of range");

  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep_sorted) kept[k] = true;

  Split s;
  s.keep_offsets = {0};
  s.traced_offsets = {0};
  for (std::size_t k = 0; k < dims.size(); ++k) {
    auto& offsets = kept[k] ? s.keep_offsets : s.traced_offsets;
    std::vector<std::size_t> grown;
    grown.reserve(offsets.size() * dims[k]);
    for (std::size_t base : offsets)
      for (std::size_t i = 0; i < dims[k]; ++i) grown.push_back(base + i * strides[k]);
    offsets = std::move(grown);
    if (kept[k]) s.keep_dims.push_back(dims[k]);
  }
  return s;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        const cplx* bk = b.row(k);
        cplx* ck = c.row(i * b.rows() + k) + j * b.cols();
        kernels::axpy(b.cols(), aij, bk, ck);
      }
    }
  if (c.square()) {
    std::vector<std::size_t> dims = a.dims().empty() ? std::vector<std::size_t>{a.rows()} : a.dims();
    std::vector<std::size_t> bd = b.dims().empty() ? std::vector<std::size_t>{b.rows()} : b.dims();
    dims.insert(dims.end(), bd.begin(), bd.end());
    c.set_dims(std::move(dims));
  }
  return c;
}

ComplexMatrix pauli(PauliOp op, std::size_t site, std::size_t n_sites) {
  if (n_sites == 0 || site >= n_sites)
    throw std::invalid_argument("pauli: site index out of range");
  const std::size_t dim = std::size_t{1} << n_sites;
  const std::size_t bit = std::size_t{1} << (n_sites - 1 - site);
  ComplexMatrix m(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const bool one = (idx & bit) != 0;
    switch (op) {
      case PauliOp::identity:
        m(idx, idx) = 1.0;
        break;
      case PauliOp::z:
        m(idx, idx) = one ? -1.0 : 1.0;
        break;
      case PauliOp::x:
        m(idx, idx ^ bit) = 1.0;
        break;
      case PauliOp::y:
        // column (idx ^ bit) -> row idx: |1><0| carries +i, |0><1| carries -i
        m(idx, idx ^ bit) = one ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
        break;
    }
  }
  m.set_dims(std::vector<std::size_t>(n_sites, 2));
  return m;
}

DensityOperator partial_trace(const StateVector& psi, std::span<const std::size_t> keep) {
  psi.validate();
  const Split s = split_factors(psi.dims, keep);
  const std::size_t dk = s.keep_offsets.size();

  DensityOperator rho;
  rho.dims = s.keep_dims;
  rho.mat = ComplexMatrix(dk, dk);
  rho.mat.set_dims(s.keep_dims);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = a; b < dk; ++b) {
      cplx acc = 0.0;
      for (std::size_t off : s.traced_offsets)
        acc += psi.amps[s.keep_offsets[a] + off] * std::conj(psi.amps[s.keep_offsets[b] + off]);
      rho.mat(a, b) = acc;
      rho.mat(b, a) = std::conj(acc);
    }
  return rho;
}

DensityOperator partial_trace(const DensityOperator& in, std::span<const std::size_t> keep) {
  if (product_of(in.dims) != in.mat.rows())
    throw std::invalid_argument("partial_trace: density operator dims mismatch");
  const Split s = split_factors(in.dims, keep);
  const std::size_t dk = s.keep_offsets.size();

  DensityOperator rho;
  rho.dims = s.keep_dims;
  rho.mat = ComplexMatrix(dk, dk);
  rho.mat.set_dims(s.keep_dims);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = a; b < dk; ++b) {
      cplx acc = 0.0;
      for (std::size_t off : s.traced_offsets)
        acc += in.mat(s.keep_offsets[a] + off, s.keep_offsets[b] + off);
      rho.mat(a, b) = acc;
      rho.mat(b, a) = std::conj(acc);
    }
  return rho;
}

}  // namespace fluxring
