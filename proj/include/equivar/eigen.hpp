#pragma once

#include <cstddef>
#include <vector>

#include "equivar/matrix.hpp"

namespace equivar {

/// Eigenpairs of a self-adjoint matrix A with D = V A V^* diagonal.
///
/// Row i of `vectors` is the unit eigenvector for `values[i]`; values are
/// ascending. Each row is normalized so that its largest-magnitude component
/// (lowest index on ties) is real and positive.
template <typename Matrix>
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
  double residual = 0.0;  // ||offdiag(V A V^*)||_F
  int sweeps = 0;
};

using RealEigen = EigenDecomposition<RealMatrix>;
using HermitianEigen = EigenDecomposition<ComplexMatrix>;

struct JacobiOptions {
  double tol = 1e-12;   // stop when ||offdiag||_F <= tol * ||A||_F
  int max_sweeps = 30;
};

/// Largest dimension accepted by the eigensolvers.
inline constexpr std::size_t kMaxEigenDimension = 64;

/// Cyclic Jacobi for real symmetric A.
/// Throws NotSymmetric, NoConvergence, DimensionTooLarge or InvalidArgument.
RealEigen symmetric_eigen(const RealMatrix& a, JacobiOptions options = {});

/// Complex Jacobi for Hermitian A; the returned unitary satisfies W A W^* = D.
/// Throws NotHermitian, NoConvergence, DimensionTooLarge or InvalidArgument.
HermitianEigen hermitian_eigen(const ComplexMatrix& a, JacobiOptions options = {});

}  // namespace equivar
