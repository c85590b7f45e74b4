#pragma once

// Scalar functions f: R^n -> R parsed from text, evaluated over doubles and
// hyper-dual numbers.
//
// Grammar (whitespace between tokens is ignored):
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?
//   atom  := NUMBER | VAR | FUNC "(" expr ")" | "(" expr ")"
//   VAR   := "x" [1-9][0-9]*
//   FUNC  := "sin" | "cos" | "exp" | "log" | "sqrt"
//
// `^` is right-associative and binds tighter than unary minus, so -x1^2 is
// -(x1^2).

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "equivar/hyper_dual.hpp"
#include "equivar/matrix.hpp"

namespace equivar {

enum class Func { Sin, Cos, Exp, Log, Sqrt };

std::string_view to_string(Func f);

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct NumberNode {
  double value;
};
struct VarNode {
  std::size_t index;  // 1-based
};
struct NegNode {
  ExprPtr child;
};
struct BinaryNode {
  char op;  // one of + - * / ^
  ExprPtr left;
  ExprPtr right;
};
struct CallNode {
  Func func;
  ExprPtr arg;
};

struct ExprNode {
  std::variant<NumberNode, VarNode, NegNode, BinaryNode, CallNode> node;
};

/// Immutable expression tree over variables x1..xn.
class Expression {
 public:
  Expression(ExprPtr root, std::size_t num_vars);

  /// Throws ParseError with code SyntaxError, UnknownIdentifier or
  /// VarIndexOutOfRange.
  static Expression parse(std::string_view text, std::size_t num_vars);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const ExprNode& root() const noexcept { return *root_; }

  /// Fully parenthesized form; parses back to a structurally equal tree.
  std::string str() const;

  /// Structural equality of the trees (literal values compared exactly).
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  ExprPtr root_;
  std::size_t num_vars_;
};

/// Evaluates over any scalar with the arithmetic of double or HyperDual.
/// Throws DomainError for log of non-positive, sqrt of negative, division by
/// zero, 0 raised to a negative power and non-integer powers of non-positive
/// bases; DimensionMismatch if point.size() != num_vars().
template <typename Scalar>
Scalar evaluate_as(const Expression& e, std::span<const Scalar> point);

extern template double evaluate_as<double>(const Expression&, std::span<const double>);
extern template HyperDual evaluate_as<HyperDual>(const Expression&, std::span<const HyperDual>);

double evaluate(const Expression& e, std::span<const double> point);

/// n forward-mode passes.
std::vector<double> gradient(const Expression& e, std::span<const double> point);

/// n(n+1)/2 hyper-dual passes; H_ij and H_ji come from the same pass.
RealMatrix hessian(const Expression& e, std::span<const double> point);

}  // namespace equivar
