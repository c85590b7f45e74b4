#include "equivar/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "equivar/eigen.hpp"
#include "equivar/expr.hpp"
#include "equivar/matrix_io.hpp"
#include "equivar/sign_group.hpp"
#include "equivar/stencil.hpp"

namespace equivar::cli {
namespace {

using json = nlohmann::json;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotSymmetric:
    case Errc::NotHermitian:
    case Errc::NotOrthogonal:
    case Errc::NotUnitary:
    case Errc::NoConvergence:
    case Errc::DimensionTooLarge:
    case Errc::AllBelowNoiseFloor:
      return kNumericalFailure;
    default:
      return kInputError;
  }
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find(' ') != std::string::npos)
      throw Error(Errc::MalformedInput, "malformed vector \"" + text + "\"");
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(x))
      throw Error(Errc::MalformedInput, "malformed number \"" + item + "\" in \"" + text + "\"");
    out.push_back(x);
  }
  if (out.empty()) throw Error(Errc::MalformedInput, "empty vector");
  return out;
}

std::string fmt6(double x) { return fmt::format("{:.6g}", x); }

void print_matrix(std::ostream& out, const RealMatrix& m, std::string_view indent = "  ") {
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << indent;
    for (std::size_t j = 0; j < m.size(); ++j) out << fmt::format("{:>12.6g}", m(i, j));
    out << '\n';
  }
}

void print_matrix_fixed4(std::ostream& out, const RealMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "  ";
    for (std::size_t j = 0; j < m.size(); ++j) out << fmt::format("{:>9.4f}", m(i, j));
    out << '\n';
  }
}

void print_matrix(std::ostream& out, const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "  ";
    for (std::size_t j = 0; j < m.size(); ++j)
      out << (j ? "  " : "")
          << fmt::format("{:.6g}{}{:.6g}i", m(i, j).real(), std::signbit(m(i, j).imag()) ? "-" : "+",
                         std::abs(m(i, j).imag()));
    out << '\n';
  }
}

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (const Complex& z : m.row(i)) row.push_back({z.real(), z.imag()});
    rows.push_back(row);
  }
  return rows;
}

// ---- eig -----------------------------------------------------------------

struct EigArgs {
  std::string path;
  double tol = 1e-12;
  int max_sweeps = 30;
  bool json = false;
};

int run_eig(const EigArgs& a, std::ostream& out) {
  const RealMatrix m = load_real_matrix(a.path);
  const RealEigen eig = symmetric_eigen(m, {a.tol, a.max_sweeps});
  if (a.json) {
    json j{{"values", eig.values}, {"V", matrix_json(eig.vectors)}, {"residual", eig.residual}};
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  out << "eigenvalues (ascending):\n ";
  for (double v : eig.values) out << ' ' << fmt6(v);
  out << "\nV (row i is the eigenvector for eigenvalue i):\n";
  print_matrix(out, eig.vectors);
  out << "residual ||offdiag(V A V^T)||_F: " << fmt6(eig.residual) << '\n';
  return kSuccess;
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  std::string path;
  std::optional<double> tol;
  bool complex = false;
  std::string w_path;
  bool json = false;
};

int run_check(const CheckArgs& a, std::ostream& out) {
  if (a.complex) {
    const ComplexMatrix m = load_complex_matrix(a.path);
    std::optional<ComplexMatrix> w;
    if (!a.w_path.empty()) w = load_complex_matrix(a.w_path);
    const double tol = a.tol.value_or(default_commutator_tol(frobenius_norm(m)));
    const NormalityVerdict v = normality_via_equivariance(m, w, tol);
    if (a.json) {
      out << json{{"verdict", v.verdict}, {"W_used", matrix_json(v.w_used)},
                  {"max_commutator", v.max_commutator}}
                 .dump(2)
          << '\n';
    } else {
      out << "verdict: " << (v.verdict ? "normal (equivariant)" : "not equivariant") << '\n';
      out << "max generator commutator: " << fmt6(v.max_commutator) << " (tol " << fmt6(tol) << ")\n";
      out << "W:\n";
      print_matrix(out, v.w_used);
    }
    return v.verdict ? kSuccess : kNegativeVerdict;
  }

  const RealMatrix m = load_real_matrix(a.path);
  const double tol = a.tol.value_or(default_commutator_tol(frobenius_norm(m)));
  const SymmetryVerdict v = symmetry_via_equivariance(m, tol);
  if (a.json) {
    out << json{{"verdict", v.verdict}, {"V", matrix_json(v.v)},
                {"max_commutator", v.max_commutator}}
               .dump(2)
        << '\n';
  } else {
    out << "verdict: " << (v.verdict ? "symmetric" : "not symmetric") << '\n';
    out << "max generator commutator: " << fmt6(v.max_commutator) << " (tol " << fmt6(tol) << ")\n";
    out << "V (eigenvectors of the symmetric part):\n";
    print_matrix(out, v.v);
  }
  return v.verdict ? kSuccess : kNegativeVerdict;
}

// ---- group ---------------------------------------------------------------

struct GroupArgs {
  std::string path;
  bool full = false;
  std::size_t max_n = kFullCheckCap;
};

int run_group(const GroupArgs& a, std::ostream& out, std::ostream& err) {
  const RealMatrix m = load_real_matrix(a.path);
  const std::size_t n = m.size();
  if (a.full && n > a.max_n) {
    err << "error: --full enumerates 2^" << n << " elements; limit is n <= " << a.max_n << '\n';
    return kNumericalFailure;
  }
  const ConjugatedGroup group(symmetric_eigen(m).vectors);

  if (a.full) {
    out << "Gamma: all " << (std::uint64_t{1} << n) << " elements\n";
    GroupStream stream(group.basis(), a.max_n);
    while (auto e = stream.next()) {
      out << e->pattern.str() << ":\n";
      print_matrix(out, e->matrix);
    }
  } else {
    out << "Gamma: " << n << " generators\n";
    for (const auto& g : group.generators()) {
      out << g.pattern.str() << ":\n";
      print_matrix(out, g.matrix);
    }
  }
  const GroupReport r =
      group_properties_check(group, a.full ? CheckMode::Full : CheckMode::Generators);
  out << "order: " << r.order << '\n'
      << "checked elements: " << r.checked << '\n'
      << "max ||gamma^2 - I||_F: " << fmt6(r.involution_max_err) << '\n'
      << "max |gamma - gamma^T|: " << fmt6(r.symmetry_max_err) << '\n'
      << "max commutator: " << fmt6(r.commutation_max_err) << '\n'
      << "closure: " << (r.closure_ok ? "ok" : "FAILED") << " (max error "
      << fmt6(r.closure_max_err) << ")\n";
  return r.closure_ok ? kSuccess : kNumericalFailure;
}

// ---- stencil -------------------------------------------------------------

struct StencilArgs {
  std::string f;
  std::size_t n = 0;
  std::string x, h, s1, s2;
  std::string scales = "1,0.5,0.25,0.125,0.0625";
  std::string csv;
};

int run_stencil(const StencilArgs& a, std::ostream& out, std::ostream& err) {
  StencilInput input{Expression::parse(a.f, a.n), parse_vector(a.x), parse_vector(a.h),
                     SignPattern::parse(a.s1), SignPattern::parse(a.s2), parse_vector(a.scales)};
  const auto check_len = [&](std::size_t len, const char* what) {
    if (len != a.n)
      throw Error(Errc::DimensionMismatch,
                  fmt::format("{} has length {}, expected {}", what, len, a.n));
  };
  check_len(input.center.size(), "--x");
  check_len(input.h.size(), "--h");
  check_len(input.pattern1.size(), "--s1");
  check_len(input.pattern2.size(), "--s2");

  const ConjugatedGroup group = hessian_group(input.f, input.center);
  const RealMatrix g1 = group.element(input.pattern1).matrix;
  const RealMatrix g2 = group.element(input.pattern2).matrix;
  out << "gamma1 (" << input.pattern1.str() << "):\n";
  print_matrix(out, g1);
  out << "gamma2 (" << input.pattern2.str() << "):\n";
  print_matrix(out, g2);

  StencilReport report;
  try {
    report = order_estimate(input, group);
  } catch (const Error& e) {
    if (e.code() == Errc::AllBelowNoiseFloor)
      for (const auto& w : degeneracy_check(g1, g2, input.h))
        err << "warning: " << to_string(w.kind) << ": " << w.message << '\n';
    throw;
  }
  write_table(out, report);
  if (!a.csv.empty()) {
    std::ofstream file(a.csv);
    if (!file) throw Error(Errc::MalformedInput, "cannot write " + a.csv);
    write_csv(file, report);
  }
  return kSuccess;
}

// ---- demo ----------------------------------------------------------------

// Worked example: f on R^3 expanded at (1,1,1).
constexpr const char* kDemoFunction = "x1*x2*x3^2 + x1^2 - 3*x2^2 + x2*sin(x1) - x2^2*x3^2";
constexpr double kPrintedGamma2[3][3] = {{0.9225, 0.3723, 0.1015},
                                         {0.3723, -0.7896, -0.4877},
                                         {0.1015, -0.4877, 0.8671}};
constexpr double kPrintedS = 6.40e-5;
constexpr double kPrintedSTenth = 6.38e-9;

int run_demo(std::ostream& out) {
  const Expression f = Expression::parse(kDemoFunction, 3);
  const std::vector<double> center{1.0, 1.0, 1.0};
  const std::vector<double> h{0.2, 0.05, 0.1};
  bool all_pass = true;
  const auto verdict = [&](bool ok, std::string_view label, const std::string& detail) {
    all_pass = all_pass && ok;
    out << (ok ? "PASS" : "FAIL") << "  " << label << ": " << detail << '\n';
  };

  out << "f(x1,x2,x3) = " << kDemoFunction << "\nexpansion point (1, 1, 1)\n\n";

  const RealMatrix hess = hessian(f, center);
  const double s1 = std::sin(1.0), c1 = std::cos(1.0);
  const RealMatrix expected_h{{2 - s1, 1 + c1, 2}, {1 + c1, -8, -2}, {2, -2, 0}};
  double h_err = 0.0;
  for (std::size_t k = 0; k < 9; ++k)
    h_err = std::max(h_err, std::abs(hess.data()[k] - expected_h.data()[k]));
  out << "H(x):\n";
  print_matrix(out, hess);

  const ConjugatedGroup group = hessian_group(f, center);
  const RealMatrix gamma2 = group.element(SignPattern::parse("-++")).matrix;
  double g_err = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      g_err = std::max(g_err, std::abs(gamma2(i, j) - kPrintedGamma2[i][j]));
  out << "gamma2 = V^T diag(-1,1,1) V (eigenvalues ascending):\n";
  print_matrix_fixed4(out, gamma2);

  const RealMatrix gamma1 = group.element(SignPattern::parse("+++")).matrix;
  std::vector<double> h10(h);
  for (double& x : h10) x /= 10.0;
  const double s_h = four_point_stencil(f, center, gamma1, gamma2, h);
  const double s_h10 = four_point_stencil(f, center, gamma1, gamma2, h10);
  out << fmt::format("\nS(h)    = {:.6g}   with h = (0.2, 0.05, 0.1)\n", s_h);
  out << fmt::format("S(h/10) = {:.6g}\n", s_h10);

  StencilInput input{f, center, h, SignPattern::parse("+++"), SignPattern::parse("-++"),
                     {1.0, 0.5, 0.25, 0.125}};
  const StencilReport report = order_estimate(input, group);
  const double decade = std::log10(s_h / s_h10);
  out << "\n";
  write_table(out, report);
  out << fmt::format("decade order log10(S(h)/S(h/10)) = {:.6g}\n\n", decade);

  const double rel_s = std::abs(s_h - kPrintedS) / kPrintedS;
  const double rel_s10 = std::abs(s_h10 - kPrintedSTenth) / kPrintedSTenth;
  verdict(h_err <= 1e-12, "1 Hessian", fmt::format("max entry error {:.3g} <= 1e-12", h_err));
  verdict(g_err <= 5e-5, "2 gamma2", fmt::format("max deviation from printed entries {:.3g} <= 5e-5", g_err));
  verdict(rel_s <= 0.01 && rel_s10 <= 0.01, "3 stencil values",
          fmt::format("relative errors {:.3g} (6.40e-5), {:.3g} (6.38e-9) <= 1%", rel_s, rel_s10));
  verdict(report.fitted_order >= 3.9 && report.fitted_order <= 4.1 && decade >= 3.99 &&
              decade <= 4.01,
          "4 fourth-order scaling",
          fmt::format("fitted {:.4f} in [3.9, 4.1], decade {:.4f} in [3.99, 4.01]",
                      report.fitted_order, decade));
  return all_pass ? kSuccess : kNumericalFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry via sign-group equivariance, and group-based four-point stencils"};
  app.name("equivar");
  app.require_subcommand(1);

  EigArgs eig;
  auto* eig_cmd = app.add_subcommand("eig", "Jacobi eigendecomposition of a symmetric matrix");
  eig_cmd->add_option("matrix", eig.path, "matrix file")->required();
  eig_cmd->add_option("--tol", eig.tol, "relative off-diagonal tolerance")->capture_default_str();
  eig_cmd->add_option("--max-sweeps", eig.max_sweeps)->capture_default_str()->check(CLI::PositiveNumber);
  eig_cmd->add_flag("--json", eig.json, "emit {values, V, residual} as JSON");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "decide A = A^T through equivariance (exit 0/1)");
  check_cmd->add_option("matrix", check.path, "matrix file")->required();
  check_cmd->add_option("--tol", check.tol, "commutator tolerance (default 1e-8*max(1,||A||_F))");
  check_cmd->add_flag("--complex", check.complex, "complex input: normality check");
  check_cmd->add_option("--w", check.w_path, "unitary diagonalizer W for --complex");
  check_cmd->add_flag("--json", check.json, "emit the verdict as JSON");

  GroupArgs group;
  auto* group_cmd = app.add_subcommand("group", "print Gamma = {V^T sigma V} for a symmetric matrix");
  group_cmd->add_option("matrix", group.path, "matrix file")->required();
  auto* full = group_cmd->add_flag("--full", group.full, "enumerate all 2^n elements");
  auto* gens = group_cmd->add_flag("--generators", "print the n generators (default)");
  full->excludes(gens);
  group_cmd->add_option("--max-n", group.max_n, "largest n accepted by --full")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, kFullCheckCap));

  StencilArgs st;
  auto* st_cmd = app.add_subcommand("stencil", "four-point stencil and convergence order");
  st_cmd->set_help_flag("--help", "Print this help message and exit");
  st_cmd->add_option("--f", st.f, "expression in x1..xn (unary minus binds looser than ^)")->required();
  st_cmd->add_option("--n", st.n, "number of variables")->required()->check(CLI::PositiveNumber);
  st_cmd->add_option("--x", st.x, "expansion point, comma-separated")->required();
  st_cmd->add_option("--h", st.h, "displacement, comma-separated")->required();
  st_cmd->add_option("--s1", st.s1, "sign pattern of gamma1, e.g. +++")->required();
  st_cmd->add_option("--s2", st.s2, "sign pattern of gamma2, e.g. -++")->required();
  st_cmd->add_option("--scales", st.scales, "strictly decreasing scales")->capture_default_str();
  st_cmd->add_option("--csv", st.csv, "also write the per-scale table as CSV");

  auto* demo_cmd = app.add_subcommand("demo", "reproduce the worked three-variable example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*eig_cmd) return run_eig(eig, out);
    if (*check_cmd) return run_check(check, out);
    if (*group_cmd) return run_group(group, out, err);
    if (*st_cmd) return run_stencil(st, out, err);
    if (*demo_cmd) return run_demo(out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInputError;
}

}  // namespace equivar::cli
