#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>

#include "equivar/expr.hpp"
#include "test_support.hpp"

using namespace equivar;
using namespace equivar::testing;

namespace {

ParseError parse_error(std::string_view text, std::size_t n) {
  try {
    (void)Expression::parse(text, n);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for " << text);
  return ParseError(Errc::SyntaxError, 0, "");
}

Errc eval_error(std::string_view text, std::vector<double> x) {
  try {
    (void)evaluate(Expression::parse(text, x.size()), x);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an evaluation error for " << text);
  return Errc::InvalidArgument;
}

double eval(std::string_view text, std::vector<double> x) {
  return evaluate(Expression::parse(text, x.size()), x);
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

// Random trees over the full grammar, for the printer round-trip.
ExprPtr random_tree(std::mt19937_64& rng, int depth) {
  auto node = [](auto n) { return std::make_shared<const ExprNode>(ExprNode{n}); };
  const int pick = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 5);
  switch (pick) {
    case 0: return node(NumberNode{std::ldexp(static_cast<double>(rng() % 1000), -static_cast<int>(rng() % 20))});
    case 1: return node(VarNode{1 + rng() % 3});
    case 2: return node(NegNode{random_tree(rng, depth - 1)});
    case 3: return node(BinaryNode{"+-*/^"[rng() % 5], random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    default: return node(CallNode{static_cast<Func>(rng() % 5), random_tree(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("parses the worked example") {
  const Expression f = Expression::parse(kExampleText, 3);
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_point(rng, 3);
    CHECK(evaluate(f, x) == doctest::Approx(example_f(x)).epsilon(1e-14));
  }
}

TEST_CASE("precedence and associativity") {
  const Expression e = Expression::parse("-x1^2", 1);
  const auto* neg = std::get_if<NegNode>(&e.root().node);
  REQUIRE(neg);
  const auto* pow = std::get_if<BinaryNode>(&neg->child->node);
  REQUIRE(pow);
  CHECK(pow->op == '^');

  CHECK(eval("-x1^2", {3}) == -9);
  CHECK(eval("(-x1)^2", {3}) == 9);
  CHECK(eval("2^3^2", {0}) == 512);
  CHECK(eval("2^-1", {0}) == 0.5);
  CHECK(eval("1 - 2 - 3", {0}) == -4);
  CHECK(eval("8 / 4 / 2", {0}) == 1);
  CHECK(eval("1 + 2 * 3", {0}) == 7);
  CHECK(eval("2 * -3", {0}) == -6);
  CHECK(eval("--x1", {2}) == 2);
  CHECK(eval("x1+x2", {2, 3}) == 5);
  CHECK(eval("1.5e1 + .5 + 2E-1", {0}) == doctest::Approx(15.7).epsilon(1e-15));
  CHECK(eval("x10", std::vector<double>(10, 4.0)) == 4);
}

TEST_CASE("parse errors") {
  CHECK(parse_error("x4", 3).code() == Errc::VarIndexOutOfRange);
  CHECK(parse_error("x0", 3).code() == Errc::UnknownIdentifier);
  CHECK(parse_error("y + 1", 3).code() == Errc::UnknownIdentifier);
  CHECK(parse_error("tan(x1)", 1).code() == Errc::UnknownIdentifier);

  const ParseError dangling = parse_error("x1 +", 1);
  CHECK(dangling.code() == Errc::SyntaxError);
  CHECK(dangling.position() == 4);

  const ParseError junk = parse_error("x1 $ 2", 1);
  CHECK(junk.code() == Errc::SyntaxError);
  CHECK(junk.position() == 3);

  CHECK(parse_error("", 1).code() == Errc::SyntaxError);
  CHECK(parse_error("(x1", 1).code() == Errc::SyntaxError);
  CHECK(parse_error("sin x1", 1).code() == Errc::SyntaxError);
  CHECK(parse_error("2x1", 1).code() == Errc::SyntaxError);
  CHECK(parse_error("1e999", 1).code() == Errc::SyntaxError);
  CHECK_THROWS_AS(Expression::parse("x1", 0), Error);
}

TEST_CASE("evaluate") {
  const Expression f = Expression::parse(kExampleText, 3);
  CHECK(evaluate(f, std::vector<double>{1, 1, 1}) == doctest::Approx(std::sin(1.0) - 2).epsilon(1e-15));
  CHECK(evaluate(f, std::vector<double>{1, 1, 1}) == doctest::Approx(-1.158529015).epsilon(1e-9));
  CHECK_THROWS_AS(evaluate(f, std::vector<double>{1, 1}), Error);
}

TEST_CASE("domain errors") {
  CHECK(eval_error("log(x1)", {0}) == Errc::DomainError);
  CHECK(eval_error("log(x1)", {-1}) == Errc::DomainError);
  CHECK(eval_error("sqrt(x1)", {-1e-300}) == Errc::DomainError);
  CHECK(eval_error("1/x1", {0}) == Errc::DomainError);
  CHECK(eval_error("x1^-2", {0}) == Errc::DomainError);
  CHECK(eval_error("x1^0.5", {-2}) == Errc::DomainError);
  CHECK(eval_error("x1^x2", {0, 0.5}) == Errc::DomainError);
  CHECK(eval("x1^x1", {0}) == 1);  // integer exponent: valid for any base
  CHECK(eval("sqrt(x1)", {0}) == 0);
  CHECK(eval("x1^3", {-2}) == -8);
  CHECK(eval("x1^-3", {-2}) == -0.125);
  CHECK(eval("x1^0", {0}) == 1);
}

TEST_CASE("gradient") {
  const Expression f = Expression::parse(kExampleText, 3);
  const auto g = gradient(f, std::vector<double>{1, 1, 1});
  // d/dx1 = x2 x3^2 + 2 x1 + x2 cos(x1)
  CHECK(g[0] == doctest::Approx(3 + std::cos(1.0)).epsilon(1e-15));
  CHECK(g[0] == doctest::Approx(3.540302).epsilon(1e-6));
  // d/dx2 = x1 x3^2 - 6 x2 + sin(x1) - 2 x2 x3^2
  CHECK(g[1] == doctest::Approx(-7 + std::sin(1.0)).epsilon(1e-15));
  // d/dx3 = 2 x1 x2 x3 - 2 x2^2 x3
  CHECK(g[2] == doctest::Approx(0).epsilon(1e-15));

  CHECK(gradient(Expression::parse("5", 2), std::vector<double>{0.3, -2}) == std::vector<double>{0, 0});

  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(rng), b = u(rng);
    CHECK(gradient(Expression::parse("x1*x2", 2), std::vector<double>{a, b}) == std::vector<double>{b, a});
  }
}

TEST_CASE("hessian") {
  const Expression f = Expression::parse(kExampleText, 3);
  const RealMatrix h = hessian(f, std::vector<double>{1, 1, 1});
  CHECK(max_abs_diff(h, example_hessian()) <= 1e-12);
  CHECK(is_symmetric(h, 0.0));

  const Expression quad = Expression::parse("x1^2 + 4*x1*x2", 2);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial)
    CHECK(hessian(quad, random_point(rng, 2)) == RealMatrix{{2, 4}, {4, 0}});
}

TEST_CASE("property: AD agrees with central differences") {
  std::mt19937_64 rng(54);
  for (const auto& entry : expression_corpus()) {
    const Expression e = Expression::parse(entry.text, entry.n);
    const ScalarFn f = [&](const std::vector<double>& x) { return evaluate(e, x); };
    for (int trial = 0; trial < 3; ++trial) {
      const auto x = random_point(rng, entry.n);
      const auto g = gradient(e, x);
      const auto g_fd = fd_gradient(f, x, 1e-5);
      for (std::size_t i = 0; i < entry.n; ++i)
        CHECK_MESSAGE(std::abs(g[i] - g_fd[i]) <= 1e-5 * std::max(1.0, std::abs(g_fd[i])), entry.text);
      const RealMatrix h = hessian(e, x);
      const RealMatrix h_fd = fd_hessian(f, x, 1e-4);
      for (std::size_t k = 0; k < h.data().size(); ++k)
        CHECK_MESSAGE(std::abs(h.data()[k] - h_fd.data()[k]) <= 1e-5 * std::max(1.0, std::abs(h_fd.data()[k])),
                      entry.text);
      CHECK(is_symmetric(h, 0.0));
    }
  }
}

TEST_CASE("property: printing re-parses to the same tree") {
  for (const auto& entry : expression_corpus()) {
    const Expression e = Expression::parse(entry.text, entry.n);
    CHECK(Expression::parse(e.str(), entry.n) == e);
  }
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 300; ++trial) {
    const Expression e(random_tree(rng, 5), 3);
    const Expression back = Expression::parse(e.str(), 3);
    CHECK_MESSAGE(back == e, e.str());
  }
}

TEST_CASE("evaluation is pure") {
  const Expression f = Expression::parse(kExampleText, 3);
  const std::vector<double> x{0.7, 1.3, -0.2};
  const double a = evaluate(f, x), b = evaluate(f, x);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  CHECK(hessian(f, x) == hessian(f, x));
}

TEST_CASE("hyper-dual product rule") {
  const HyperDual a(2, 3, 5, 7), b(11, 13, 17, 19);
  const HyperDual p = a * b;
  CHECK(p.value == 22);
  CHECK(p.d1 == 2 * 13 + 3 * 11);
  CHECK(p.d2 == 2 * 17 + 5 * 11);
  CHECK(p.d12 == 2 * 19 + 3 * 17 + 5 * 13 + 7 * 11);
}
