#include "equivar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "equivar/kernels.hpp"

namespace equivar {
namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double conj_of(double x) { return x; }
Complex conj_of(const Complex& z) { return std::conj(z); }

template <typename T>
void require_finite(std::span<const T> data) {
  for (const T& x : data)
    if (!finite(x)) throw Error(Errc::NonFinite, "matrix entry is not finite");
}

template <typename T>
void require_same_size(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  if (a.size() != b.size())
    throw Error(Errc::DimensionMismatch, "matrix dimensions differ: " + std::to_string(a.size()) +
                                             " vs " + std::to_string(b.size()));
}

template <typename T>
double frobenius(const SquareMatrix<T>& a) {
  double s = 0.0;
  for (const T& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

template <typename T>
double commutator(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  require_same_size(a, b);
  return frobenius(multiply(a, b) - multiply(b, a));
}

template <typename T>
SquareMatrix<T> gram_minus_identity(const SquareMatrix<T>& v) {
  SquareMatrix<T> g = multiply(v, v.adjoint());
  for (std::size_t i = 0; i < v.size(); ++i) g(i, i) -= T{1};
  return g;
}

template <typename T>
double adjoint_defect(const SquareMatrix<T>& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - conj_of(a(j, i))));
  return worst;
}

}  // namespace

template <typename T>
SquareMatrix<T>::SquareMatrix(std::size_t n, std::vector<T> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n)
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(n * n) + " entries, got " +
                                             std::to_string(data_.size()));
  require_finite<T>(data_);
}

template <typename T>
SquareMatrix<T>::SquareMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(Errc::DimensionMismatch, "matrix literal is not square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite<T>(data_);
}

template <typename T>
SquareMatrix<T> SquareMatrix<T>::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <typename T>
SquareMatrix<T> SquareMatrix<T>::diagonal(std::span<const T> values) {
  SquareMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(values);
  return m;
}

template <typename T>
SquareMatrix<T> SquareMatrix<T>::transpose() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <typename T>
SquareMatrix<T> SquareMatrix<T>::adjoint() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = conj_of((*this)(i, j));
  return t;
}

template <typename T>
SquareMatrix<T>& SquareMatrix<T>::operator+=(const SquareMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

template <typename T>
SquareMatrix<T>& SquareMatrix<T>::operator-=(const SquareMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

template <typename T>
SquareMatrix<T>& SquareMatrix<T>::operator*=(T scalar) {
  for (T& x : data_) x *= scalar;
  return *this;
}

template class SquareMatrix<double>;
template class SquareMatrix<Complex>;

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.size());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k];
  return c;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a, b);
  RealMatrix c(a.size());
  kernels::gemm(a.data(), b.data(), c.data(), a.size());
  return c;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a, b);
  ComplexMatrix c(a.size());
  kernels::gemm(a.data(), b.data(), c.data(), a.size());
  return c;
}

std::vector<double> multiply(const RealMatrix& a, std::span<const double> x) {
  if (x.size() != a.size())
    throw Error(Errc::DimensionMismatch, "vector length does not match matrix dimension");
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

double frobenius_norm(const RealMatrix& a) { return frobenius(a); }
double frobenius_norm(const ComplexMatrix& a) { return frobenius(a); }

double commutator_norm(const RealMatrix& a, const RealMatrix& b) { return commutator(a, b); }
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return commutator(a, b);
}

bool is_diagonal(const RealMatrix& b, double tol) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (i != j && std::abs(b(i, j)) > tol) return false;
  return true;
}

double symmetry_defect(const RealMatrix& a) { return adjoint_defect(a); }
double hermitian_defect(const ComplexMatrix& a) { return adjoint_defect(a); }

bool is_symmetric(const RealMatrix& a, double tol) { return symmetry_defect(a) <= tol; }
bool is_hermitian(const ComplexMatrix& a, double tol) { return hermitian_defect(a) <= tol; }

double orthogonality_defect(const RealMatrix& v) { return frobenius(gram_minus_identity(v)); }
double unitarity_defect(const ComplexMatrix& w) { return frobenius(gram_minus_identity(w)); }

bool is_orthogonal(const RealMatrix& v, double tol) { return orthogonality_defect(v) <= tol; }
bool is_unitary(const ComplexMatrix& w, double tol) { return unitarity_defect(w) <= tol; }

bool is_normal(const ComplexMatrix& a, double tol) {
  const ComplexMatrix star = a.adjoint();
  return frobenius(multiply(a, star) - multiply(star, a)) <= tol;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::VarIndexOutOfRange: return "VarIndexOutOfRange";
    case Errc::DomainError: return "DomainError";
    case Errc::AllBelowNoiseFloor: return "AllBelowNoiseFloor";
  }
  return "Unknown";
}

}  // namespace equivar
