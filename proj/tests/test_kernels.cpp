#include "doctest.h"

#include <random>

#include <omp.h>

#include "equivar/kernels.hpp"
#include "equivar/sign_group.hpp"
#include "test_support.hpp"

using namespace equivar;

TEST_CASE("parallel gemm is bit-identical to the serial reference") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(11);
  for (std::size_t n : {3u, 47u, 48u, 64u, 100u}) {
    const RealMatrix a = testing::random_matrix(rng, n), b = testing::random_matrix(rng, n);
    RealMatrix par(n), ser(n);
    kernels::gemm(a.data(), b.data(), par.data(), n);
    kernels::serial::gemm(a.data(), b.data(), ser.data(), n);
    CHECK(par == ser);
  }

  const ComplexMatrix ca = testing::random_hermitian(rng, 64);
  const ComplexMatrix cb = testing::random_hermitian(rng, 64);
  ComplexMatrix par(64), ser(64);
  kernels::gemm(ca.data(), cb.data(), par.data(), 64);
  kernels::serial::gemm(ca.data(), cb.data(), ser.data(), 64);
  CHECK(par == ser);
}

TEST_CASE("parallel pairwise scan agrees with the serial reference") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(12);
  const RealMatrix v = testing::random_orthogonal(rng, 5);
  std::vector<RealMatrix> elements;
  for (auto& e : enumerate_group(v)) elements.push_back(e.matrix);

  const auto par = kernels::pairwise_scan(elements, 1e-8);
  const auto ser = kernels::serial::pairwise_scan(elements, 1e-8);
  CHECK(par.commutation_max_err == ser.commutation_max_err);
  CHECK(par.closure_max_err == ser.closure_max_err);
  CHECK(par.closure_ok == ser.closure_ok);
  CHECK(par.closure_ok);
  CHECK(par.commutation_max_err < 1e-12);
}

TEST_CASE("pairwise scan detects a broken group") {
  // Two non-commuting reflections do not close under products.
  std::vector<RealMatrix> elements{RealMatrix::identity(2), RealMatrix{{1, 0}, {0, -1}}};
  const double c = std::cos(0.3), s = std::sin(0.3);
  elements[1] = RealMatrix{{c, s}, {s, -c}};
  elements.push_back(RealMatrix{{-1, 0}, {0, 1}});
  elements.push_back(-1.0 * RealMatrix::identity(2));
  const auto scan = kernels::pairwise_scan(elements, 1e-8);
  CHECK_FALSE(scan.closure_ok);
  CHECK(scan.commutation_max_err > 0.1);
  CHECK(kernels::serial::pairwise_scan(elements, 1e-8).closure_ok == false);
}
