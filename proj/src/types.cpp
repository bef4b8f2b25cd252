#include "fluxring/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxring/kernels.hpp"

namespace fluxring {

void ComplexMatrix::set_dims(std::vector<std::size_t> dims) {
  if (product_of(dims) != rows_)
    throw std::invalid_argument("dims annotation does not match matrix size");
  dims_ = std::move(dims);
}

double ComplexMatrix::hermiticity_error() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  out.dims_ = dims_;
  return out;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const cplx& v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

void ComplexMatrix::matvec(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw std::invalid_argument("matvec: dimension mismatch");
  for (std::size_t i = 0; i < rows_; ++i) y[i] = kernels::dotu(cols_, row(i), x.data());
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix subtract: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (cplx& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      kernels::axpy(b.cols(), aik, b.row(k), ci);
    }
  }
  return c;
}

StateVector::StateVector(std::vector<std::size_t> d)
    : dims(std::move(d)), amps(product_of(dims)) {}

StateVector StateVector::basis_state(std::vector<std::size_t> dims,
                                     std::span<const std::size_t> indices) {
  StateVector psi(std::move(dims));
  psi.amps[flat_index(psi.dims, indices)] = 1.0;
  return psi;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::validate() const {
  if (dims.empty() || amps.size() != product_of(dims))
    throw std::invalid_argument("state vector: amplitude count does not match dims");
}

double DensityOperator::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < mat.rows(); ++i) t += mat(i, i).real();
  return t;
}

void DensityOperator::validate(double trace_tol) const {
  if (!mat.square() || product_of(dims) != mat.rows())
    throw std::invalid_argument("density operator: dims do not match matrix");
  if (std::abs(trace_real() - 1.0) > trace_tol)
    throw std::invalid_argument("density operator: trace is not 1");
  if (!mat.is_hermitian(1e-10))
    throw std::invalid_argument("density operator: not Hermitian");
}

std::size_t flat_index(std::span<const std::size_t> dims, std::span<const std::size_t> idx) {
  if (dims.size() != idx.size()) throw std::invalid_argument("flat_index: rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] >= dims[k]) throw std::invalid_argument("flat_index: index out of range");
    flat = flat * dims[k] + idx[k];
  }
  return flat;
}

std::size_t product_of(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

}  // namespace fluxring
