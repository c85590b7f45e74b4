// Serial reference vs OpenMP kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "equivar/kernels.hpp"
#include "equivar/sign_group.hpp"

namespace {

using equivar::RealMatrix;

RealMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  RealMatrix m(n);
  for (double& x : m.data()) x = u(rng);
  return m;
}

std::vector<RealMatrix> group_elements(std::size_t n) {
  RealMatrix v = RealMatrix::identity(n);
  // A fixed rotation in every coordinate plane keeps V orthogonal and dense.
  for (std::size_t p = 0; p + 1 < n; ++p) {
    const double c = std::cos(0.3 + 0.1 * p), s = std::sin(0.3 + 0.1 * p);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = v(p, k), b = v(p + 1, k);
      v(p, k) = c * a - s * b;
      v(p + 1, k) = s * a + c * b;
    }
  }
  std::vector<RealMatrix> out;
  for (auto& e : equivar::enumerate_group(v)) out.push_back(std::move(e.matrix));
  return out;
}

void BM_GemmSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  RealMatrix c(n);
  for (auto _ : state) {
    equivar::kernels::serial::gemm(a.data(), b.data(), c.data(), n);
    benchmark::DoNotOptimize(c.data().data());
  }
}

void BM_GemmParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  RealMatrix c(n);
  for (auto _ : state) {
    equivar::kernels::gemm(a.data(), b.data(), c.data(), n);
    benchmark::DoNotOptimize(c.data().data());
  }
}

void BM_PairScanSerial(benchmark::State& state) {
  const auto elements = group_elements(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(equivar::kernels::serial::pairwise_scan(elements, 1e-8));
}

void BM_PairScanParallel(benchmark::State& state) {
  const auto elements = group_elements(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(equivar::kernels::pairwise_scan(elements, 1e-8));
}

}  // namespace

BENCHMARK(BM_GemmSerial)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_GemmParallel)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_PairScanSerial)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_PairScanParallel)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
