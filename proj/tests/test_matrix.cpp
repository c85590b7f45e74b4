#include "doctest.h"

#include <cmath>
#include <random>

#include "equivar/matrix.hpp"
#include "test_support.hpp"

using namespace equivar;
using namespace equivar::testing;

TEST_CASE("multiply: identity and sign flip") {
  std::mt19937_64 rng(1);
  const RealMatrix a = random_matrix(rng, 4);
  CHECK(multiply(RealMatrix::identity(4), a) == a);

  const RealMatrix flip{{1, 0}, {0, -1}};
  const RealMatrix swap{{0, 1}, {1, 0}};
  CHECK(flip * swap == RealMatrix{{0, 1}, {-1, 0}});
}

TEST_CASE("multiply matches a triple-loop oracle") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {4u, 8u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const RealMatrix a = random_matrix(rng, n), b = random_matrix(rng, n);
      const RealMatrix expected = naive_product(a, b);
      const RealMatrix got = a * b;
      for (std::size_t k = 0; k < n * n; ++k)
        CHECK(std::abs(got.data()[k] - expected.data()[k]) <=
              1e-13 * std::max(1.0, std::abs(expected.data()[k])));
    }
  }
}

TEST_CASE("multiply rejects mismatched sizes") {
  CHECK_THROWS_AS(multiply(RealMatrix(2), RealMatrix(3)), Error);
  try {
    (void)multiply(RealMatrix(2), RealMatrix(3));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(RealMatrix(2, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS((RealMatrix{{1, 2}, {3}}), Error);
  CHECK_THROWS_AS((RealMatrix{{1, NAN}, {0, 1}}), Error);
  CHECK_THROWS_AS((RealMatrix{{INFINITY}}), Error);
}

TEST_CASE("commutator_norm") {
  std::mt19937_64 rng(3);
  const RealMatrix a = random_matrix(rng, 3);
  CHECK(commutator_norm(a, RealMatrix::identity(3)) == 0.0);

  // [[1,0],[0,2]] [[0,1],[1,0]] - [[0,1],[1,0]] [[1,0],[0,2]] = [[0,-1],[1,0]]
  const RealMatrix d{{1, 0}, {0, 2}};
  const RealMatrix s{{0, 1}, {1, 0}};
  CHECK(commutator_norm(d, s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const RealMatrix d1{{1, 0, 0}, {0, -2, 0}, {0, 0, 5}};
  const RealMatrix d2{{7, 0, 0}, {0, 3, 0}, {0, 0, -1}};
  CHECK(commutator_norm(d1, d2) == 0.0);

  CHECK_THROWS_AS(commutator_norm(RealMatrix(2), RealMatrix(3)), Error);
}

TEST_CASE("is_diagonal threshold") {
  CHECK(is_diagonal(RealMatrix{{5, 0}, {0, -3}}, 0.0));
  const RealMatrix b{{1, 1e-9}, {0, 2}};
  CHECK(is_diagonal(b, 1e-8));
  CHECK_FALSE(is_diagonal(b, 1e-10));
}

TEST_CASE("is_symmetric") {
  CHECK(is_symmetric(example_hessian(), 0.0));
  CHECK_FALSE(is_symmetric(RealMatrix{{0, 1}, {0, 0}}, 0.5));

  std::mt19937_64 rng(4);
  const RealMatrix a = random_matrix(rng, 5);
  CHECK(is_symmetric(a + a.transpose(), 0.0));
}

TEST_CASE("is_orthogonal") {
  CHECK(is_orthogonal(RealMatrix::identity(3), 0.0));
  CHECK(is_orthogonal(printed_gamma2(), 1e-3));
  CHECK_FALSE(is_orthogonal(2.0 * RealMatrix::identity(3), 0.1));
}

TEST_CASE("is_normal") {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_hermitian(rng, 4);
  const double f = frobenius_norm(h);
  CHECK(is_normal(h, 1e-12 * f * f));

  const ComplexMatrix rotation{{0, -1}, {1, 0}};
  CHECK(is_normal(rotation, 0.0));
  CHECK_FALSE(is_symmetric(RealMatrix{{0, -1}, {1, 0}}, 0.5));

  CHECK_FALSE(is_normal(ComplexMatrix{{0, 1}, {0, 0}}, 0.5));
}

TEST_CASE("adjoint conjugates") {
  const ComplexMatrix a{{Complex(1, 2), Complex(3, -1)}, {Complex(0, 1), Complex(4, 0)}};
  const ComplexMatrix s = a.adjoint();
  CHECK(s(0, 1) == Complex(0, -1));
  CHECK(s(1, 0) == Complex(3, 1));
  CHECK(is_hermitian(a + a.adjoint(), 0.0));
}
