#pragma once

// The sign group Sigma of diagonal +-1 matrices and its conjugate
// Gamma = { V^T sigma V } for an orthogonal V.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equivar/matrix.hpp"

namespace equivar {

/// Diagonal of a sigma in Sigma. String form is `+`/`-` per entry, e.g. "-++".
class SignPattern {
 public:
  /// All-plus pattern of length n (n >= 1).
  explicit SignPattern(std::size_t n);

  /// Throws InvalidArgument for empty input or characters other than + and -.
  static SignPattern parse(std::string_view text);
  /// Single -1 at `position`.
  static SignPattern flip(std::size_t n, std::size_t position);
  /// Pattern number `index` in lexicographic order with + before -
  /// (position 0 is the most significant bit; a set bit means -).
  static SignPattern from_index(std::size_t n, std::uint64_t index);

  std::size_t size() const noexcept { return negative_.size(); }
  bool negative(std::size_t i) const { return negative_[i]; }
  double sign(std::size_t i) const { return negative_[i] ? -1.0 : 1.0; }
  /// Inverse of from_index; only meaningful for n <= 64.
  std::uint64_t index() const;
  std::string str() const;

  bool operator==(const SignPattern&) const = default;

  /// Product in Sigma (entrywise sign product).
  friend SignPattern operator*(const SignPattern& a, const SignPattern& b);

 private:
  std::vector<bool> negative_;
};

/// diag(pattern).
RealMatrix sigma_matrix(const SignPattern& pattern);

struct GroupElement {
  RealMatrix matrix;
  SignPattern pattern;
};

/// gamma = V^T sigma V, materialized as I - 2 sum_{i negative} v_i v_i^T with
/// v_i the rows of V. Throws NotOrthogonal unless ||V V^T - I||_F <= 1e-8.
GroupElement gamma_from_pattern(const RealMatrix& v, const SignPattern& pattern);

/// Gamma for a fixed orthogonal V, held through its n single-flip generators.
class ConjugatedGroup {
 public:
  /// Throws NotOrthogonal.
  explicit ConjugatedGroup(RealMatrix v);

  const RealMatrix& basis() const noexcept { return v_; }
  std::size_t dimension() const noexcept { return v_.size(); }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }

  GroupElement element(const SignPattern& pattern) const;

 private:
  RealMatrix v_;
  std::vector<GroupElement> generators_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 20;
inline constexpr std::size_t kFullCheckCap = 12;

/// Lazy enumeration of all 2^n elements of Gamma in lexicographic pattern order.
class GroupStream {
 public:
  /// Throws DimensionTooLarge when n exceeds `cap` and NotOrthogonal.
  GroupStream(RealMatrix v, std::size_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const noexcept { return std::uint64_t{1} << v_.size(); }
  std::optional<GroupElement> next();

 private:
  RealMatrix v_;
  std::uint64_t cursor_ = 0;
};

/// Materializes the stream; element k has pattern index k.
std::vector<GroupElement> enumerate_group(const RealMatrix& v,
                                          std::size_t cap = kDefaultEnumerationCap);

/// Worst generator commutator max_i ||gamma_i A - A gamma_i||_F.
double max_generator_commutator(const RealMatrix& a, const ConjugatedGroup& group);

/// gamma A = A gamma for every gamma in Gamma(V), checked on the n generators.
bool is_equivariant(const RealMatrix& a, const RealMatrix& v, double tol);

/// sigma B = B sigma for every sigma in Sigma, checked on the n single flips.
bool commutes_with_sign_group(const RealMatrix& b, double tol);
/// Same question answered by visiting all 2^n elements of Sigma (n <= 20).
bool commutes_with_sign_group_full(const RealMatrix& b, double tol);

/// 1e-8 * max(1, ||A||_F).
double default_commutator_tol(double frobenius);

struct SymmetryVerdict {
  bool verdict = false;
  RealMatrix v;               // eigenvectors of (A + A^T)/2
  double max_commutator = 0;  // worst generator commutator with A
};

/// Decides A = A^T by testing equivariance under the group built from the
/// eigenvectors of the symmetric part of A.
SymmetryVerdict symmetry_via_equivariance(const RealMatrix& a, double tol);
SymmetryVerdict symmetry_via_equivariance(const RealMatrix& a);

enum class CheckMode { Generators, Full };

struct GroupReport {
  double involution_max_err = 0;   // max ||gamma^2 - I||_F
  double symmetry_max_err = 0;     // max |gamma_ij - gamma_ji|
  double commutation_max_err = 0;  // max over pairs
  double closure_max_err = 0;
  bool closure_ok = true;
  std::uint64_t order = 0;
  std::size_t checked = 0;  // number of elements examined
};

/// Group axioms for Gamma. Full mode enumerates all 2^n elements and every
/// pair (n <= 12, otherwise DimensionTooLarge); generator mode checks the n
/// generators and their pairwise products.
GroupReport group_properties_check(const ConjugatedGroup& group,
                                   CheckMode mode = CheckMode::Full);

/// Complex analogue: gamma = W^* sigma W.
ComplexMatrix unitary_gamma(const ComplexMatrix& w, const SignPattern& pattern);

struct NormalityVerdict {
  bool verdict = false;
  ComplexMatrix w_used;
  double max_commutator = 0;
};

/// Equivariance test for normal matrices. Without `w`, A must be Hermitian
/// and W comes from hermitian_eigen; a supplied W must be unitary to 1e-8.
NormalityVerdict normality_via_equivariance(const ComplexMatrix& a,
                                            const std::optional<ComplexMatrix>& w, double tol);

}  // namespace equivar
