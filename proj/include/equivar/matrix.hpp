#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "equivar/errors.hpp"

namespace equivar {

using Complex = std::complex<double>;

/// Dense square matrix stored row-major. Entries are always finite.
template <typename T>
class SquareMatrix {
 public:
  using value_type = T;

  SquareMatrix() = default;

  /// n x n zero matrix.
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  /// Row-major entries; throws DimensionMismatch unless entries.size() == n*n.
  SquareMatrix(std::size_t n, std::vector<T> entries);

  /// Nested rows, e.g. {{1, 2}, {3, 4}}.
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows);

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix diagonal(std::span<const T> values);

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  SquareMatrix transpose() const;
  /// Conjugate transpose; same as transpose() for real matrices.
  SquareMatrix adjoint() const;

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator-=(const SquareMatrix& other);
  SquareMatrix& operator*=(T scalar);

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(T s, SquareMatrix a) { return a *= s; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<Complex>;

extern template class SquareMatrix<double>;
extern template class SquareMatrix<Complex>;

/// Embeds a real matrix into the complex one with zero imaginary parts.
ComplexMatrix to_complex(const RealMatrix& a);

/// Standard product A*B. Throws DimensionMismatch when sizes differ.
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

inline RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) { return multiply(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b);
}

std::vector<double> multiply(const RealMatrix& a, std::span<const double> x);

double frobenius_norm(const RealMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

/// ||AB - BA||_F.
double commutator_norm(const RealMatrix& a, const RealMatrix& b);
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{i != j} |B_ij| <= tol.
bool is_diagonal(const RealMatrix& b, double tol);
/// max_{i,j} |A_ij - A_ji| <= tol.
bool is_symmetric(const RealMatrix& a, double tol);
/// max_{i,j} |A_ij - conj(A_ji)| <= tol.
bool is_hermitian(const ComplexMatrix& a, double tol);
/// ||V V^T - I||_F <= tol.
bool is_orthogonal(const RealMatrix& v, double tol);
/// ||W W^* - I||_F <= tol.
bool is_unitary(const ComplexMatrix& w, double tol);
/// ||A A^* - A^* A||_F <= tol.
bool is_normal(const ComplexMatrix& a, double tol);

/// Largest entrywise |A_ij - A_ji|.
double symmetry_defect(const RealMatrix& a);
double hermitian_defect(const ComplexMatrix& a);
double orthogonality_defect(const RealMatrix& v);
double unitarity_defect(const ComplexMatrix& w);

double norm2(std::span<const double> x);

}  // namespace equivar
