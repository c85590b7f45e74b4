#include "equivar/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

namespace equivar {
namespace {

ExprPtr make(auto node) { return std::make_shared<const ExprNode>(ExprNode{std::move(node)}); }

class Parser {
 public:
  Parser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

  ExprPtr parse() {
    skip_space();
    if (pos_ == text_.size()) fail(Errc::SyntaxError, "empty expression");
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(Errc::SyntaxError, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(Errc code, const std::string& what) const {
    throw ParseError(code, pos_, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size()) fail(Errc::SyntaxError, std::string("expected '") + c + "' before end of input");
      fail(Errc::SyntaxError, std::string("expected '") + c + "'");
    }
  }

  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      if (accept('+'))
        left = make(BinaryNode{'+', left, term()});
      else if (accept('-'))
        left = make(BinaryNode{'-', left, term()});
      else
        return left;
    }
  }

  ExprPtr term() {
    ExprPtr left = unary();
    for (;;) {
      if (accept('*'))
        left = make(BinaryNode{'*', left, unary()});
      else if (accept('/'))
        left = make(BinaryNode{'/', left, unary()});
      else
        return left;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return make(NegNode{unary()});
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) return make(BinaryNode{'^', base, unary()});
    return base;
  }

  ExprPtr atom() {
    skip_space();
    if (pos_ == text_.size()) fail(Errc::SyntaxError, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(Errc::SyntaxError, std::string("unexpected '") + c + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail(Errc::SyntaxError, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      fail(Errc::SyntaxError, "number out of range");
    }
    return make(NumberNode{value});
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin}, {"cos", Func::Cos}, {"exp", Func::Exp},
        {"log", Func::Log}, {"sqrt", Func::Sqrt}};
    for (const auto& [fname, func] : kFuncs) {
      if (name != fname) continue;
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      return make(CallNode{func, arg});
    }

    const bool var_shape = name.size() >= 2 && name[0] == 'x' && name[1] != '0' &&
                           name.substr(1).find_first_not_of("0123456789") == std::string_view::npos;
    if (!var_shape) {
      pos_ = start;
      fail(Errc::UnknownIdentifier, "unknown identifier '" + std::string(name) + "'");
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
    if (ec != std::errc() || index > num_vars_) {
      pos_ = start;
      fail(Errc::VarIndexOutOfRange, "variable '" + std::string(name) + "' out of range (n = " +
                                         std::to_string(num_vars_) + ")");
    }
    return make(VarNode{index});
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

void print(const ExprNode& n, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberNode>) {
          out += fmt::format("{}", node.value);
        } else if constexpr (std::is_same_v<T, VarNode>) {
          out += fmt::format("x{}", node.index);
        } else if constexpr (std::is_same_v<T, NegNode>) {
          out += "(-";
          print(*node.child, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          out += '(';
          print(*node.left, out);
          out += node.op;
          print(*node.right, out);
          out += ')';
        } else {
          out += to_string(node.func);
          out += '(';
          print(*node.arg, out);
          out += ')';
        }
      },
      n.node);
}

bool equal(const ExprNode& a, const ExprNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NumberNode>)
          return x.value == y.value;
        else if constexpr (std::is_same_v<T, VarNode>)
          return x.index == y.index;
        else if constexpr (std::is_same_v<T, NegNode>)
          return equal(*x.child, *y.child);
        else if constexpr (std::is_same_v<T, BinaryNode>)
          return x.op == y.op && equal(*x.left, *y.left) && equal(*x.right, *y.right);
        else
          return x.func == y.func && equal(*x.arg, *y.arg);
      },
      a.node);
}

[[noreturn]] void domain_error(const std::string& what) { throw Error(Errc::DomainError, what); }

double value_of(double x) { return x; }
double value_of(const HyperDual& x) { return x.value; }
bool is_constant(double) { return true; }
bool is_constant(const HyperDual& x) { return x.is_constant(); }

template <typename S>
S integer_power(S base, std::int64_t exponent) {
  if (exponent == 0) return S{1.0};
  const bool invert = exponent < 0;
  if (invert && value_of(base) == 0.0) domain_error("0 raised to a negative power");
  std::uint64_t k = invert ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                           : static_cast<std::uint64_t>(exponent);
  S result{1.0};
  bool first = true;
  while (k) {
    if (k & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return invert ? S{1.0} / result : result;
}

template <typename S>
S power(const S& base, const S& exponent) {
  const double b = value_of(exponent);
  if (is_constant(exponent) && std::trunc(b) == b && std::abs(b) < 9.0e15)
    return integer_power(base, static_cast<std::int64_t>(b));
  if (!(value_of(base) > 0.0)) domain_error("non-integer power of a non-positive base");
  if constexpr (std::is_same_v<S, double>) {
    return std::pow(base, exponent);
  } else {
    HyperDual r = exp(exponent * log(base));
    r.value = std::pow(base.value, exponent.value);
    return r;
  }
}

template <typename S>
S call(Func f, const S& x) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt;
  switch (f) {
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Exp: return exp(x);
    case Func::Log:
      if (!(value_of(x) > 0.0)) domain_error("log of a non-positive argument");
      return log(x);
    case Func::Sqrt:
      if (value_of(x) < 0.0) domain_error("sqrt of a negative argument");
      return sqrt(x);
  }
  domain_error("unknown function");
}

template <typename S>
S eval(const ExprNode& n, std::span<const S> point) {
  return std::visit(
      [&](const auto& node) -> S {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberNode>) {
          return S{node.value};
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return point[node.index - 1];
        } else if constexpr (std::is_same_v<T, NegNode>) {
          return -eval(*node.child, point);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          const S l = eval(*node.left, point);
          const S r = eval(*node.right, point);
          switch (node.op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            case '/':
              if (value_of(r) == 0.0) domain_error("division by zero");
              return l / r;
            default: return power(l, r);
          }
        } else {
          return call(node.func, eval(*node.arg, point));
        }
      },
      n.node);
}

}  // namespace

std::string_view to_string(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

Expression::Expression(ExprPtr root, std::size_t num_vars)
    : root_(std::move(root)), num_vars_(num_vars) {
  if (!root_) throw Error(Errc::InvalidArgument, "null expression");
}

Expression Expression::parse(std::string_view text, std::size_t num_vars) {
  if (num_vars == 0) throw Error(Errc::InvalidArgument, "number of variables must be >= 1");
  return Expression(Parser(text, num_vars).parse(), num_vars);
}

std::string Expression::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool operator==(const Expression& a, const Expression& b) {
  return a.num_vars_ == b.num_vars_ && equal(*a.root_, *b.root_);
}

template <typename Scalar>
Scalar evaluate_as(const Expression& e, std::span<const Scalar> point) {
  if (point.size() != e.num_vars())
    throw Error(Errc::DimensionMismatch, "point has " + std::to_string(point.size()) +
                                             " coordinates, expression expects " +
                                             std::to_string(e.num_vars()));
  return eval(e.root(), point);
}

template double evaluate_as<double>(const Expression&, std::span<const double>);
template HyperDual evaluate_as<HyperDual>(const Expression&, std::span<const HyperDual>);

double evaluate(const Expression& e, std::span<const double> point) {
  return evaluate_as<double>(e, point);
}

std::vector<double> gradient(const Expression& e, std::span<const double> point) {
  if (point.size() != e.num_vars()) throw Error(Errc::DimensionMismatch, "point dimension mismatch");
  std::vector<HyperDual> seeded(point.begin(), point.end());
  std::vector<double> g(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    seeded[i].d1 = 1.0;
    g[i] = evaluate_as<HyperDual>(e, seeded).d1;
    seeded[i].d1 = 0.0;
  }
  return g;
}

RealMatrix hessian(const Expression& e, std::span<const double> point) {
  const std::size_t n = point.size();
  if (n != e.num_vars()) throw Error(Errc::DimensionMismatch, "point dimension mismatch");
  std::vector<HyperDual> seeded(point.begin(), point.end());
  RealMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      seeded[i].d1 = 1.0;
      seeded[j].d2 = 1.0;
      const double hij = evaluate_as<HyperDual>(e, seeded).d12;
      seeded[i].d1 = 0.0;
      seeded[j].d2 = 0.0;
      h(i, j) = hij;
      h(j, i) = hij;
    }
  }
  return h;
}

}  // namespace equivar
