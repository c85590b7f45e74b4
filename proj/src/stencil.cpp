#include "equivar/stencil.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "equivar/eigen.hpp"

namespace equivar {
namespace {

std::vector<double> offset(std::span<const double> center, std::span<const double> d,
                           double sign) {
  std::vector<double> p(center.begin(), center.end());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += sign * d[i];
  return p;
}

// f(x + d) + f(x - d)
double symmetric_pair(const Expression& f, std::span<const double> center,
                      std::span<const double> d) {
  return evaluate(f, offset(center, d, 1.0)) + evaluate(f, offset(center, d, -1.0));
}

void require_sizes(const Expression& f, std::span<const double> center, std::span<const double> h,
                   std::size_t gamma_n) {
  const std::size_t n = f.num_vars();
  if (center.size() != n || h.size() != n || gamma_n != n)
    throw Error(Errc::DimensionMismatch, "stencil inputs must all have dimension " +
                                             std::to_string(n));
}

double distance(std::span<const double> a, std::span<const double> b, double sign) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - sign * b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool is_scalar(const RealMatrix& g, double tol) {
  const RealMatrix eye = RealMatrix::identity(g.size());
  return frobenius_norm(g - eye) <= tol || frobenius_norm(g + eye) <= tol;
}

}  // namespace

std::vector<double> default_scales() { return {1.0, 0.5, 0.25, 0.125, 0.0625}; }

std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::GammaPairDegenerate: return "GammaPairDegenerate";
    case WarningKind::HNearEigenvector: return "HNearEigenvector";
    case WarningKind::InsufficientScales: return "InsufficientScales";
  }
  return "?";
}

double second_difference(const Expression& f, std::span<const double> center,
                         const RealMatrix& gamma, std::span<const double> h) {
  require_sizes(f, center, h, gamma.size());
  const std::vector<double> gh = multiply(gamma, h);
  return evaluate(f, offset(center, gh, 1.0)) - 2.0 * evaluate(f, center) +
         evaluate(f, offset(center, gh, -1.0));
}

double four_point_stencil(const Expression& f, std::span<const double> center,
                          const RealMatrix& gamma1, const RealMatrix& gamma2,
                          std::span<const double> h) {
  require_sizes(f, center, h, gamma1.size());
  require_sizes(f, center, h, gamma2.size());
  return symmetric_pair(f, center, multiply(gamma1, h)) -
         symmetric_pair(f, center, multiply(gamma2, h));
}

ConjugatedGroup hessian_group(const Expression& f, std::span<const double> center) {
  return ConjugatedGroup(symmetric_eigen(hessian(f, center)).vectors);
}

double noise_floor(double f_center) { return 1e-14 * std::max(1.0, std::abs(f_center)); }

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += std::log(x[k]);
    my += std::log(std::abs(y[k]));
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(std::abs(y[k])) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<StencilWarning> degeneracy_check(const RealMatrix& gamma1, const RealMatrix& gamma2,
                                             std::span<const double> h, double tol) {
  std::vector<StencilWarning> out;
  if (gamma1.size() != gamma2.size() || h.size() != gamma1.size())
    throw Error(Errc::DimensionMismatch, "degeneracy check dimension mismatch");

  const double minus = frobenius_norm(gamma1 - gamma2);
  const double plus = frobenius_norm(gamma1 + gamma2);
  if (minus <= tol || plus <= tol)
    out.push_back({WarningKind::GammaPairDegenerate, 0,
                   fmt::format("gamma1 = {}gamma2: the stencil vanishes identically",
                               minus <= tol ? "" : "-")});

  const double hn = norm2(h);
  const RealMatrix* gammas[] = {&gamma1, &gamma2};
  for (int j = 0; j < 2; ++j) {
    const RealMatrix& g = *gammas[j];
    if (is_scalar(g, tol)) continue;
    const std::vector<double> gh = multiply(g, h);
    const double rel = hn > 0.0 ? std::min(distance(gh, h, 1.0), distance(gh, h, -1.0)) / hn : 0.0;
    if (rel <= tol)
      out.push_back({WarningKind::HNearEigenvector, j + 1,
                     fmt::format("h is within {:.3g} (relative) of an eigenvector of gamma{}", rel,
                                 j + 1)});
  }
  return out;
}

StencilReport order_estimate(const StencilInput& input, const ConjugatedGroup& group) {
  const Expression& f = input.f;
  require_sizes(f, input.center, input.h, group.dimension());
  if (input.pattern1.size() != f.num_vars() || input.pattern2.size() != f.num_vars())
    throw Error(Errc::DimensionMismatch, "sign patterns must have length " +
                                             std::to_string(f.num_vars()));
  if (input.scales.size() < 2) throw Error(Errc::InvalidArgument, "need at least two scales");
  for (std::size_t k = 0; k < input.scales.size(); ++k) {
    if (!(input.scales[k] > 0.0) || !std::isfinite(input.scales[k]))
      throw Error(Errc::InvalidArgument, "scales must be positive");
    if (k > 0 && !(input.scales[k] < input.scales[k - 1]))
      throw Error(Errc::InvalidArgument, "scales must be strictly decreasing");
  }
  if (!(norm2(input.h) > 0.0)) throw Error(Errc::InvalidArgument, "h must be nonzero");

  const RealMatrix g1 = group.element(input.pattern1).matrix;
  const RealMatrix g2 = group.element(input.pattern2).matrix;
  const RealMatrix hess = hessian(f, input.center);

  StencilReport report;
  report.f_center = evaluate(f, input.center);
  report.noise_floor = noise_floor(report.f_center);
  report.warnings = degeneracy_check(g1, g2, input.h);

  const auto count = static_cast<long>(input.scales.size());
  report.rows.resize(input.scales.size());
  std::vector<std::exception_ptr> failures(input.scales.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) {
    try {
      ScaleRecord& row = report.rows[static_cast<std::size_t>(k)];
      row.scale = input.scales[static_cast<std::size_t>(k)];
      std::vector<double> sh(input.h);
      for (double& x : sh) x *= row.scale;
      row.S = four_point_stencil(f, input.center, g1, g2, sh);
      row.second_diff_1 = second_difference(f, input.center, g1, sh);
      row.second_diff_2 = second_difference(f, input.center, g2, sh);
      const std::vector<double> hs = multiply(hess, sh);
      for (std::size_t i = 0; i < sh.size(); ++i) row.hquad += sh[i] * hs[i];
      row.above_noise = std::abs(row.S) > report.noise_floor;
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  std::vector<double> xs, ys;
  for (const auto& row : report.rows) {
    if (!row.above_noise) continue;
    xs.push_back(row.scale);
    ys.push_back(row.S);
  }
  if (xs.empty())
    throw Error(Errc::AllBelowNoiseFloor,
                fmt::format("every |S| is below the noise floor {:.3g}: the stencil is degenerate "
                            "or f has no fourth-order content here",
                            report.noise_floor));
  if (xs.size() < 2) {
    report.fitted_order = std::numeric_limits<double>::quiet_NaN();
    report.warnings.push_back({WarningKind::InsufficientScales, 0,
                               "only one scale is above the noise floor; order not fitted"});
  } else {
    report.fitted_order = log_log_slope(xs, ys);
  }
  return report;
}

void write_csv(std::ostream& out, const StencilReport& report) {
  out << "scale,S,second_diff_1,second_diff_2,hquad\n";
  for (const auto& r : report.rows)
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.scale, r.S,
                       r.second_diff_1, r.second_diff_2, r.hquad);
}

void write_table(std::ostream& out, const StencilReport& report) {
  out << fmt::format("{:>12} {:>14} {:>14} {:>14} {:>14}\n", "scale", "S", "second_diff_1",
                     "second_diff_2", "hquad");
  for (const auto& r : report.rows)
    out << fmt::format("{:>12.6g} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g}{}\n", r.scale, r.S,
                       r.second_diff_1, r.second_diff_2, r.hquad,
                       r.above_noise ? "" : "  (below noise floor)");
  out << fmt::format("fitted order: {:.6g}\n", report.fitted_order);
  for (const auto& w : report.warnings)
    out << "warning: " << to_string(w.kind) << ": " << w.message << '\n';
}

}  // namespace equivar
