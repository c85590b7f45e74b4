#include "equivar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

namespace equivar::kernels {
namespace {

// Below this size thread start-up costs more than the product.
constexpr std::size_t kParallelGemmMin = 48;

template <typename T>
inline void gemm_row(const T* a, const T* b, T* c, std::size_t n, std::size_t i) {
  T* ci = c + i * n;
  std::fill(ci, ci + n, T{});
  for (std::size_t k = 0; k < n; ++k) {
    const T aik = a[i * n + k];
    const T* bk = b + k * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
  }
}

template <typename T>
void gemm_serial(std::span<const T> a, std::span<const T> b, std::span<T> c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) gemm_row(a.data(), b.data(), c.data(), n, i);
}

template <typename T>
void gemm_parallel(std::span<const T> a, std::span<const T> b, std::span<T> c, std::size_t n) {
  const auto rows = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelGemmMin)
  for (long i = 0; i < rows; ++i)
    gemm_row(a.data(), b.data(), c.data(), n, static_cast<std::size_t>(i));
}

double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// Examines the pair (a, b) for every b, using scratch buffers of n*n.
void scan_row(std::span<const RealMatrix> elements, std::size_t a, double closure_tol,
              std::vector<double>& ab, std::vector<double>& ba, PairScan& out) {
  const std::size_t n = elements[a].size();
  for (std::size_t b = 0; b < elements.size(); ++b) {
    gemm_serial<double>(elements[a].data(), elements[b].data(), ab, n);
    gemm_serial<double>(elements[b].data(), elements[a].data(), ba, n);
    out.commutation_max_err = std::max(out.commutation_max_err, distance(ab, ba));

    const std::size_t expected = a ^ b;
    double err = expected < elements.size() ? distance(ab, elements[expected].data())
                                            : INFINITY;
    out.closure_max_err = std::max(out.closure_max_err, err);
    if (err > closure_tol) {
      bool found = false;
      for (const auto& e : elements) {
        if (distance(ab, e.data()) <= closure_tol) {
          found = true;
          break;
        }
      }
      if (!found) out.closure_ok = false;
    }
  }
}

}  // namespace

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t n) {
  gemm_parallel(a, b, c, n);
}

void gemm(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
          std::size_t n) {
  gemm_parallel(a, b, c, n);
}

PairScan pairwise_scan(std::span<const RealMatrix> elements, double closure_tol) {
  if (elements.empty()) return {};
  const std::size_t n = elements.front().size();
  const auto count = static_cast<long>(elements.size());
  double comm = 0.0;
  double clos = 0.0;
  int ok = 1;
#pragma omp parallel reduction(max : comm, clos) reduction(min : ok)
  {
    std::vector<double> ab(n * n), ba(n * n);
    PairScan local;
#pragma omp for schedule(dynamic, 4)
    for (long a = 0; a < count; ++a)
      scan_row(elements, static_cast<std::size_t>(a), closure_tol, ab, ba, local);
    comm = std::max(comm, local.commutation_max_err);
    clos = std::max(clos, local.closure_max_err);
    ok = std::min(ok, local.closure_ok ? 1 : 0);
  }
  return {comm, clos, ok == 1};
}

int thread_count() { return omp_get_max_threads(); }

namespace serial {

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t n) {
  gemm_serial(a, b, c, n);
}

void gemm(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
          std::size_t n) {
  gemm_serial(a, b, c, n);
}

PairScan pairwise_scan(std::span<const RealMatrix> elements, double closure_tol) {
  PairScan out;
  if (elements.empty()) return out;
  const std::size_t n = elements.front().size();
  std::vector<double> ab(n * n), ba(n * n);
  for (std::size_t a = 0; a < elements.size(); ++a)
    scan_row(elements, a, closure_tol, ab, ba, out);
  return out;
}

}  // namespace serial
}  // namespace equivar::kernels
