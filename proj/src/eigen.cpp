#include "equivar/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace equivar {
namespace {

constexpr double kSkipRotation = 1e-30;

double conj_of(double x) { return x; }
Complex conj_of(const Complex& z) { return std::conj(z); }

double real_of(double x) { return x; }
double real_of(const Complex& z) { return z.real(); }

// Splits the pivot a_pq into a real magnitude and a unit phase so that
// a_pq = w * phase. Real pivots keep their sign in w.
void split_pivot(double a, double& w, double& phase) {
  w = a;
  phase = 1.0;
}
void split_pivot(const Complex& a, double& w, Complex& phase) {
  w = std::abs(a);
  phase = a / w;
}

template <typename T>
double off_diagonal_norm(const SquareMatrix<T>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One rotation in the (p, q) plane: A <- U^* A U, Q <- Q U with
// U = [[c, s], [-s conj(e), c conj(e)]] chosen to zero A_pq.
template <typename T>
void rotate(SquareMatrix<T>& a, SquareMatrix<T>& q, std::size_t p, std::size_t r) {
  double w;
  T phase;
  split_pivot(a(p, r), w, phase);

  const double app = real_of(a(p, p));
  const double aqq = real_of(a(r, r));
  const double theta = (aqq - app) / (2.0 * w);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;

  const T u_pp = c, u_pq = s;
  const T u_qp = -s * conj_of(phase), u_qq = c * conj_of(phase);
  const std::size_t n = a.size();

  for (std::size_t k = 0; k < n; ++k) {  // columns
    const T akp = a(k, p), akq = a(k, r);
    a(k, p) = akp * u_pp + akq * u_qp;
    a(k, r) = akp * u_pq + akq * u_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // rows
    const T apk = a(p, k), aqk = a(r, k);
    a(p, k) = conj_of(u_pp) * apk + conj_of(u_qp) * aqk;
    a(r, k) = conj_of(u_pq) * apk + conj_of(u_qq) * aqk;
  }
  a(p, r) = T{};
  a(r, p) = T{};
  a(p, p) = real_of(a(p, p));
  a(r, r) = real_of(a(r, r));

  for (std::size_t k = 0; k < n; ++k) {
    const T qkp = q(k, p), qkq = q(k, r);
    q(k, p) = qkp * u_pp + qkq * u_qp;
    q(k, r) = qkp * u_pq + qkq * u_qq;
  }
}

// Makes the largest-magnitude entry of row i real positive.
template <typename T>
void normalize_row(std::span<T> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k)
    if (std::abs(row[k]) > std::abs(row[best])) best = k;
  const T scale = conj_of(row[best]) / std::abs(row[best]);
  for (T& x : row) x *= scale;
}

template <typename T>
EigenDecomposition<SquareMatrix<T>> jacobi(const SquareMatrix<T>& input,
                                           const JacobiOptions& options) {
  const std::size_t n = input.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "empty matrix");
  if (n > kMaxEigenDimension)
    throw Error(Errc::DimensionTooLarge,
                "eigensolver dimension " + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxEigenDimension));
  if (options.max_sweeps < 1) throw Error(Errc::InvalidArgument, "max_sweeps must be >= 1");
  if (!(options.tol >= 0.0)) throw Error(Errc::InvalidArgument, "tol must be >= 0");

  const double scale = frobenius_norm(input);
  // Symmetrize to remove sub-tolerance asymmetry.
  SquareMatrix<T> a = input + input.adjoint();
  a *= T{0.5};
  SquareMatrix<T> q = SquareMatrix<T>::identity(n);

  int sweep = 0;
  while (off_diagonal_norm(a) > options.tol * scale) {
    if (sweep == options.max_sweeps)
      throw Error(Errc::NoConvergence, "Jacobi did not converge in " +
                                           std::to_string(options.max_sweeps) + " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r)
        if (std::abs(a(p, r)) >= kSkipRotation) rotate(a, q, p, r);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return real_of(a(i, i)) < real_of(a(j, j));
  });

  EigenDecomposition<SquareMatrix<T>> out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = SquareMatrix<T>(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = real_of(a(order[i], order[i]));
    auto row = out.vectors.row(i);
    for (std::size_t k = 0; k < n; ++k) row[k] = conj_of(q(k, order[i]));
    normalize_row(row);
  }
  const SquareMatrix<T> d = multiply(multiply(out.vectors, input), out.vectors.adjoint());
  out.residual = off_diagonal_norm(d);
  return out;
}

}  // namespace

RealEigen symmetric_eigen(const RealMatrix& a, JacobiOptions options) {
  if (!is_symmetric(a, 1e-12 * frobenius_norm(a)))
    throw Error(Errc::NotSymmetric, "matrix is not symmetric (max |A_ij - A_ji| = " +
                                        std::to_string(symmetry_defect(a)) + ")");
  return jacobi(a, options);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a, JacobiOptions options) {
  if (!is_hermitian(a, 1e-12 * frobenius_norm(a)))
    throw Error(Errc::NotHermitian, "matrix is not Hermitian");
  return jacobi(a, options);
}

}  // namespace equivar
