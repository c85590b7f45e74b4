#include "doctest.h"

#include <random>
#include <sstream>

#include "equivar/matrix_io.hpp"
#include "test_support.hpp"

using namespace equivar;

namespace {

Errc read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)read_real_matrix(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for: " << text);
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("reads comments, integers and scientific notation") {
  std::istringstream in("# header\n# another\n2\n1 -2.5e-1\n  3E2   4\n");
  const RealMatrix m = read_real_matrix(in);
  CHECK(m == RealMatrix{{1, -0.25}, {300, 4}});
}

TEST_CASE("malformed matrix files") {
  CHECK(read_error("") == Errc::MalformedInput);
  CHECK(read_error("# only comments\n") == Errc::MalformedInput);
  CHECK(read_error("2\n1 2 3\n4 5 6\n") == Errc::MalformedInput);  // non-square rows
  CHECK(read_error("2\n1 2\n") == Errc::MalformedInput);           // missing row
  CHECK(read_error("1\n1\n2\n") == Errc::MalformedInput);          // extra row
  CHECK(read_error("2\n1 x\n3 4\n") == Errc::MalformedInput);
  CHECK(read_error("0\n") == Errc::MalformedInput);
  CHECK(read_error("2.5\n1 2\n3 4\n") == Errc::MalformedInput);
  CHECK(read_error("1\nnan\n") == Errc::MalformedInput);
  CHECK(read_error("1\n1e999\n") == Errc::MalformedInput);
  CHECK(read_error("1\n1+2i\n") == Errc::MalformedInput);  // complex in a real file
}

TEST_CASE("complex entries") {
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("-1.5-2e-3i") == Complex(-1.5, -2e-3));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("2-i") == Complex(2, -1));
  CHECK(parse_complex("4") == Complex(4, 0));
  CHECK(parse_complex("1e+2+1e-2i") == Complex(100, 0.01));
  CHECK_THROWS_AS(parse_complex("1+2j"), Error);
  CHECK_THROWS_AS(parse_complex("1*2i"), Error);
  CHECK_THROWS_AS(parse_complex("i1"), Error);

  std::istringstream in("2\n0 -1i\n1i 0\n");
  const ComplexMatrix y = read_complex_matrix(in);
  CHECK(y(0, 1) == Complex(0, -1));
  CHECK(y(1, 0) == Complex(0, 1));
}

TEST_CASE("write/read round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const RealMatrix a = testing::random_matrix(rng, n, -1e6, 1e6);
    std::stringstream buf;
    write_matrix(buf, a);
    CHECK(read_real_matrix(buf) == a);

    const ComplexMatrix c = testing::random_hermitian(rng, n);
    std::stringstream cbuf;
    write_matrix(cbuf, c);
    CHECK(read_complex_matrix(cbuf) == c);
  }
}
