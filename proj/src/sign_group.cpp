#include "equivar/sign_group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equivar/eigen.hpp"
#include "equivar/kernels.hpp"

namespace equivar {
namespace {

constexpr double kBasisOrthogonalityTol = 1e-8;
constexpr double kClosureTol = 1e-8;

// I - 2 sum_{i negative} v_i v_i^T. For V orthogonal this equals V^T sigma V.
RealMatrix reflection_sum(const RealMatrix& v, const SignPattern& pattern) {
  const std::size_t n = v.size();
  RealMatrix g = RealMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!pattern.negative(i)) continue;
    const auto vi = v.row(i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g(j, k) -= 2.0 * vi[j] * vi[k];
  }
  return g;
}

void require_orthogonal(const RealMatrix& v) {
  const double defect = orthogonality_defect(v);
  if (!(defect <= kBasisOrthogonalityTol))
    throw Error(Errc::NotOrthogonal,
                "basis is not orthogonal (||V V^T - I||_F = " + std::to_string(defect) + ")");
}

void require_pattern_size(const RealMatrix& v, const SignPattern& pattern) {
  if (pattern.size() != v.size())
    throw Error(Errc::DimensionMismatch, "sign pattern length " + std::to_string(pattern.size()) +
                                             " does not match dimension " +
                                             std::to_string(v.size()));
}

std::uint64_t group_order(std::size_t n) {
  return n < 64 ? std::uint64_t{1} << n : std::numeric_limits<std::uint64_t>::max();
}

double distance(const RealMatrix& a, const RealMatrix& b) { return frobenius_norm(a - b); }

}  // namespace

SignPattern::SignPattern(std::size_t n) : negative_(n, false) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sign pattern must have length >= 1");
}

SignPattern SignPattern::parse(std::string_view text) {
  SignPattern p(text.empty() ? 1 : text.size());
  if (text.empty()) throw Error(Errc::InvalidArgument, "empty sign pattern");
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '-')
      p.negative_[i] = true;
    else if (text[i] != '+')
      throw Error(Errc::InvalidArgument,
                  "sign pattern may only contain '+' and '-': \"" + std::string(text) + "\"");
  }
  return p;
}

SignPattern SignPattern::flip(std::size_t n, std::size_t position) {
  SignPattern p(n);
  if (position >= n) throw Error(Errc::InvalidArgument, "flip position out of range");
  p.negative_[position] = true;
  return p;
}

SignPattern SignPattern::from_index(std::size_t n, std::uint64_t index) {
  SignPattern p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = n - 1 - i;
    p.negative_[i] = bit < 64 && ((index >> bit) & 1u);
  }
  return p;
}

std::uint64_t SignPattern::index() const {
  std::uint64_t k = 0;
  for (bool neg : negative_) k = (k << 1) | (neg ? 1u : 0u);
  return k;
}

SignPattern operator*(const SignPattern& a, const SignPattern& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "sign pattern lengths differ");
  SignPattern p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p.negative_[i] = a.negative_[i] != b.negative_[i];
  return p;
}

std::string SignPattern::str() const {
  std::string s;
  for (bool neg : negative_) s.push_back(neg ? '-' : '+');
  return s;
}

RealMatrix sigma_matrix(const SignPattern& pattern) {
  RealMatrix s(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) s(i, i) = pattern.sign(i);
  return s;
}

GroupElement gamma_from_pattern(const RealMatrix& v, const SignPattern& pattern) {
  require_pattern_size(v, pattern);
  require_orthogonal(v);
  return {reflection_sum(v, pattern), pattern};
}

ConjugatedGroup::ConjugatedGroup(RealMatrix v) : v_(std::move(v)) {
  if (v_.size() == 0) throw Error(Errc::InvalidArgument, "empty basis");
  require_orthogonal(v_);
  generators_.reserve(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i)
    generators_.push_back(element(SignPattern::flip(v_.size(), i)));
}

GroupElement ConjugatedGroup::element(const SignPattern& pattern) const {
  require_pattern_size(v_, pattern);
  return {reflection_sum(v_, pattern), pattern};
}

GroupStream::GroupStream(RealMatrix v, std::size_t cap) : v_(std::move(v)) {
  if (v_.size() == 0) throw Error(Errc::InvalidArgument, "empty basis");
  if (v_.size() > cap)
    throw Error(Errc::DimensionTooLarge,
                "cannot enumerate 2^" + std::to_string(v_.size()) + " elements (cap n <= " +
                    std::to_string(cap) + "); use the generators instead");
  require_orthogonal(v_);
}

std::optional<GroupElement> GroupStream::next() {
  if (cursor_ >= size()) return std::nullopt;
  const SignPattern p = SignPattern::from_index(v_.size(), cursor_++);
  return GroupElement{reflection_sum(v_, p), p};
}

std::vector<GroupElement> enumerate_group(const RealMatrix& v, std::size_t cap) {
  GroupStream stream(v, cap);
  std::vector<GroupElement> out;
  out.reserve(stream.size());
  while (auto e = stream.next()) out.push_back(std::move(*e));
  return out;
}

double max_generator_commutator(const RealMatrix& a, const ConjugatedGroup& group) {
  if (a.size() != group.dimension())
    throw Error(Errc::DimensionMismatch, "matrix and group dimensions differ");
  double worst = 0.0;
  for (const auto& g : group.generators()) worst = std::max(worst, commutator_norm(g.matrix, a));
  return worst;
}

bool is_equivariant(const RealMatrix& a, const RealMatrix& v, double tol) {
  if (a.size() != v.size()) throw Error(Errc::DimensionMismatch, "A and V dimensions differ");
  return max_generator_commutator(a, ConjugatedGroup(v)) <= tol;
}

bool commutes_with_sign_group(const RealMatrix& b, double tol) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (commutator_norm(sigma_matrix(SignPattern::flip(b.size(), i)), b) > tol) return false;
  return true;
}

bool commutes_with_sign_group_full(const RealMatrix& b, double tol) {
  if (b.size() > kDefaultEnumerationCap)
    throw Error(Errc::DimensionTooLarge, "full sign-group enumeration is capped at n <= 20");
  const std::uint64_t count = std::uint64_t{1} << b.size();
  for (std::uint64_t k = 0; k < count; ++k)
    if (commutator_norm(sigma_matrix(SignPattern::from_index(b.size(), k)), b) > tol) return false;
  return true;
}

double default_commutator_tol(double frobenius) { return 1e-8 * std::max(1.0, frobenius); }

SymmetryVerdict symmetry_via_equivariance(const RealMatrix& a, double tol) {
  RealMatrix sym = a + a.transpose();
  sym *= 0.5;
  ConjugatedGroup group(symmetric_eigen(sym).vectors);
  SymmetryVerdict out;
  out.max_commutator = max_generator_commutator(a, group);
  out.verdict = out.max_commutator <= tol;
  out.v = group.basis();
  return out;
}

SymmetryVerdict symmetry_via_equivariance(const RealMatrix& a) {
  return symmetry_via_equivariance(a, default_commutator_tol(frobenius_norm(a)));
}

GroupReport group_properties_check(const ConjugatedGroup& group, CheckMode mode) {
  const std::size_t n = group.dimension();
  GroupReport report;
  report.order = group_order(n);

  std::vector<RealMatrix> elements;
  if (mode == CheckMode::Full) {
    if (n > kFullCheckCap)
      throw Error(Errc::DimensionTooLarge, "full group check is capped at n <= " +
                                               std::to_string(kFullCheckCap));
    for (auto& e : enumerate_group(group.basis(), kFullCheckCap))
      elements.push_back(std::move(e.matrix));
  } else {
    for (const auto& g : group.generators()) elements.push_back(g.matrix);
  }
  report.checked = elements.size();

  const RealMatrix eye = RealMatrix::identity(n);
  for (const auto& g : elements) {
    report.involution_max_err = std::max(report.involution_max_err, distance(g * g, eye));
    report.symmetry_max_err = std::max(report.symmetry_max_err, symmetry_defect(g));
  }

  if (mode == CheckMode::Full) {
    const auto scan = kernels::pairwise_scan(elements, kClosureTol);
    report.commutation_max_err = scan.commutation_max_err;
    report.closure_max_err = scan.closure_max_err;
    report.closure_ok = scan.closure_ok;
    return report;
  }

  const auto& gens = group.generators();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const RealMatrix ab = gens[a].matrix * gens[b].matrix;
      report.commutation_max_err =
          std::max(report.commutation_max_err, distance(ab, gens[b].matrix * gens[a].matrix));
      const double err = distance(ab, group.element(gens[a].pattern * gens[b].pattern).matrix);
      report.closure_max_err = std::max(report.closure_max_err, err);
      if (err > kClosureTol) report.closure_ok = false;
    }
  }
  return report;
}

ComplexMatrix unitary_gamma(const ComplexMatrix& w, const SignPattern& pattern) {
  const std::size_t n = w.size();
  if (pattern.size() != n) throw Error(Errc::DimensionMismatch, "sign pattern length mismatch");
  ComplexMatrix g = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!pattern.negative(i)) continue;
    const auto wi = w.row(i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g(j, k) -= 2.0 * std::conj(wi[j]) * wi[k];
  }
  return g;
}

NormalityVerdict normality_via_equivariance(const ComplexMatrix& a,
                                            const std::optional<ComplexMatrix>& w, double tol) {
  NormalityVerdict out;
  if (w) {
    if (w->size() != a.size()) throw Error(Errc::DimensionMismatch, "A and W dimensions differ");
    const double defect = unitarity_defect(*w);
    if (!(defect <= kBasisOrthogonalityTol))
      throw Error(Errc::NotUnitary,
                  "W is not unitary (||W W^* - I||_F = " + std::to_string(defect) + ")");
    out.w_used = *w;
  } else {
    if (!is_hermitian(a, 1e-12 * frobenius_norm(a)))
      throw Error(Errc::NotHermitian,
                  "A is not Hermitian; supply a diagonalizing unitary W for general normal A");
    out.w_used = hermitian_eigen(a).vectors;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ComplexMatrix g = unitary_gamma(out.w_used, SignPattern::flip(a.size(), i));
    out.max_commutator = std::max(out.max_commutator, commutator_norm(g, a));
  }
  out.verdict = out.max_commutator <= tol;
  return out;
}

}  // namespace equivar
