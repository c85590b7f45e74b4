#pragma once

#include <cmath>

namespace equivar {

/// Truncated second-order Taylor number a + b e1 + c e2 + d e1 e2 with
/// e1^2 = e2^2 = 0. Seeding e1 and e2 along directions i and j makes `d12`
/// the mixed partial d^2 f / dx_i dx_j.
struct HyperDual {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d12 = 0.0;

  constexpr HyperDual() = default;
  constexpr HyperDual(double v) : value(v) {}  // NOLINT: constants promote implicitly
  constexpr HyperDual(double v, double a, double b, double ab) : value(v), d1(a), d2(b), d12(ab) {}

  /// True when all infinitesimal parts vanish.
  constexpr bool is_constant() const { return d1 == 0.0 && d2 == 0.0 && d12 == 0.0; }

  friend constexpr HyperDual operator+(const HyperDual& a, const HyperDual& b) {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
  }
  friend constexpr HyperDual operator-(const HyperDual& a, const HyperDual& b) {
    return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
  }
  friend constexpr HyperDual operator-(const HyperDual& a) {
    return {-a.value, -a.d1, -a.d2, -a.d12};
  }
  friend constexpr HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.value * b.value, a.value * b.d1 + a.d1 * b.value, a.value * b.d2 + a.d2 * b.value,
            a.value * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.value};
  }
  friend constexpr HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    return a * reciprocal(b);
  }

  /// f(x) lifted through its first two derivatives at x.value.
  static constexpr HyperDual chain(const HyperDual& x, double f, double df, double ddf) {
    return {f, df * x.d1, df * x.d2, df * x.d12 + ddf * x.d1 * x.d2};
  }

  friend constexpr HyperDual reciprocal(const HyperDual& x) {
    const double r = 1.0 / x.value;
    return chain(x, r, -r * r, 2.0 * r * r * r);
  }
};

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.value);
  return HyperDual::chain(x, s, std::cos(x.value), -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double c = std::cos(x.value);
  return HyperDual::chain(x, c, -std::sin(x.value), -c);
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.value);
  return HyperDual::chain(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  const double r = 1.0 / x.value;
  return HyperDual::chain(x, std::log(x.value), r, -r * r);
}
inline HyperDual sqrt(const HyperDual& x) {
  const double s = std::sqrt(x.value);
  return HyperDual::chain(x, s, 0.5 / s, -0.25 / (s * x.value));
}

}  // namespace equivar
