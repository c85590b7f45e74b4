#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version and a serial
// reference in `kernels::serial`; both compute each output with the same
// operation order, so their results are bit-identical for any thread count.

#include <cstddef>
#include <span>

#include "equivar/matrix.hpp"

namespace equivar::kernels {

/// c = a * b for n x n row-major operands. `c` must not alias `a` or `b`.
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t n);
void gemm(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
          std::size_t n);

struct PairScan {
  double commutation_max_err = 0.0;  // max ||g_a g_b - g_b g_a||_F
  double closure_max_err = 0.0;      // max ||g_a g_b - g_{a^b}||_F
  bool closure_ok = true;            // every product matched some element to closure_tol
};

/// Scans all ordered pairs of an enumerated Z_2^n group. `elements[k]` must be
/// the element whose sign pattern has bit k, so the product of elements a and
/// b is expected at index a ^ b. Products that miss their expected partner are
/// searched against every element before closure is declared broken.
PairScan pairwise_scan(std::span<const RealMatrix> elements, double closure_tol);

namespace serial {

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t n);
void gemm(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> c,
          std::size_t n);
PairScan pairwise_scan(std::span<const RealMatrix> elements, double closure_tol);

}  // namespace serial

/// Number of OpenMP threads kernels will use.
int thread_count();

}  // namespace equivar::kernels
