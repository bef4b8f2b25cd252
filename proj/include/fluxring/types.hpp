#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxring {

using cplx = std::complex<double>;

/// An iterative numerical procedure failed (e.g. eigensolver non-convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major storage.
///
/// A matrix may carry an annotation of the tensor-product structure of the
/// basis it acts on (`dims`, leftmost factor = most significant index).
/// An empty `dims` means "unstructured"; consumers that need the structure
/// fall back to a single factor of size rows().
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* row(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  /// Tensor-factor annotation of the basis (may be empty).
  const std::vector<std::size_t>& dims() const { return dims_; }
  void set_dims(std::vector<std::size_t> dims);

  /// max_ij |A[i][j] - conj(A[j][i])|
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const { return square() && hermiticity_error() <= tol; }

  ComplexMatrix dagger() const;

  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& other) const;

  /// y = A x
  void matvec(std::span<const cplx> x, std::span<cplx> y) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
  std::vector<std::size_t> dims_;
};

/// Pure state over a labeled tensor basis. Leftmost factor is the most
/// significant index in the flattened amplitude array.
struct StateVector {
  std::vector<std::size_t> dims;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(std::vector<std::size_t> d);

  /// Basis product state |i_0 i_1 ... i_{K-1}>.
  static StateVector basis_state(std::vector<std::size_t> dims,
                                 std::span<const std::size_t> indices);

  std::size_t dim() const { return amps.size(); }
  double norm() const;
  void validate() const;  // throws std::invalid_argument on dims/amps mismatch
};

/// Density operator over a labeled tensor basis (Hermitian, trace one).
struct DensityOperator {
  std::vector<std::size_t> dims;
  ComplexMatrix mat;

  std::size_t dim() const { return mat.rows(); }
  double trace_real() const;
  void validate(double trace_tol = 1e-8) const;
};

/// Flat index of a multi-index under row-major (leftmost most significant) order.
std::size_t flat_index(std::span<const std::size_t> dims, std::span<const std::size_t> idx);

std::size_t product_of(std::span<const std::size_t> dims);

}  // namespace fluxring
