#pragma once

// Four-point stencils built from the group of the Hessian. For gamma in
// Gamma(x) the second difference f(x+gh) - 2f(x) + f(x-gh) reproduces
// h^T H(x) h up to fourth-order terms, so subtracting two such differences
// leaves a quantity of size O(|h|^4).

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "equivar/expr.hpp"
#include "equivar/sign_group.hpp"

namespace equivar {

std::vector<double> default_scales();  // 1, 1/2, 1/4, 1/8, 1/16

struct StencilInput {
  Expression f;
  std::vector<double> center;
  std::vector<double> h;
  SignPattern pattern1;
  SignPattern pattern2;
  std::vector<double> scales = default_scales();
};

enum class WarningKind { GammaPairDegenerate, HNearEigenvector, InsufficientScales };

struct StencilWarning {
  WarningKind kind;
  int gamma = 0;  // 1 or 2 for HNearEigenvector
  std::string message;
};

std::string_view to_string(WarningKind kind);

struct ScaleRecord {
  double scale = 0;
  double S = 0;
  double second_diff_1 = 0;
  double second_diff_2 = 0;
  double hquad = 0;  // (s h)^T H (s h)
  bool above_noise = false;
};

struct StencilReport {
  std::vector<ScaleRecord> rows;
  double f_center = 0;
  double noise_floor = 0;
  double fitted_order = 0;  // NaN when fewer than two scales clear the noise floor
  std::vector<StencilWarning> warnings;
};

/// f(x + g h) - 2 f(x) + f(x - g h).
double second_difference(const Expression& f, std::span<const double> center,
                         const RealMatrix& gamma, std::span<const double> h);

/// [f(x + g1 h) + f(x - g1 h)] - [f(x + g2 h) + f(x - g2 h)].
/// Antisymmetric in (g1, g2) and even in h, both exactly.
double four_point_stencil(const Expression& f, std::span<const double> center,
                          const RealMatrix& gamma1, const RealMatrix& gamma2,
                          std::span<const double> h);

/// Gamma(x): the group generated from the eigenvectors of hessian(f, x).
ConjugatedGroup hessian_group(const Expression& f, std::span<const double> center);

/// 1e-14 * max(1, |f(x)|).
double noise_floor(double f_center);

/// Runs the stencil over every scale and fits the convergence order as the
/// least-squares slope of log|S| against log s over scales above the noise
/// floor. `group` must be hessian_group(input.f, input.center).
/// Throws AllBelowNoiseFloor when no scale clears the floor, InvalidArgument
/// for bad scale ladders or h = 0, DimensionMismatch, DomainError.
StencilReport order_estimate(const StencilInput& input, const ConjugatedGroup& group);

/// Advisory checks: the pair is useless when g1 = +-g2, and h should not be an
/// eigenvector of either element. Scalar elements (+-I) fix every vector and
/// are exempt from the eigenvector check.
std::vector<StencilWarning> degeneracy_check(const RealMatrix& gamma1, const RealMatrix& gamma2,
                                             std::span<const double> h, double tol = 1e-2);

/// Least-squares slope of log|y| against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

void write_csv(std::ostream& out, const StencilReport& report);
void write_table(std::ostream& out, const StencilReport& report);

}  // namespace equivar
