#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splab/dense_matrix.hpp"

namespace splab::linalg {

/// Full symmetric eigendecomposition: eigenvalues ascending, eigenvectors as
/// orthonormal columns in the same order.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  RealMatrix eigenvectors;
};

/// Eigenvalues together with a subset of eigenvector rows.
///
/// `rows(r, k)` is component `row_indices[r]` of the k-th eigenvector. Only the
/// requested components are accumulated, so the cost is O(n^2 * rows) instead
/// of O(n^3).
struct PartialEigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::size_t> row_indices;
  RealMatrix rows;
};

/// Symmetric tridiagonal eigensolver (implicit-shift QL).
///
/// Throws ContractError when `offdiag.size() != diag.size() - 1` or an entry is
/// not finite, ConvergenceError naming the eigenvalue index when the per-index
/// iteration cap is exceeded.
EigenDecomposition tridiag_eigh(std::span<const double> diag, std::span<const double> offdiag);

PartialEigenDecomposition tridiag_eigh_rows(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            std::span<const std::size_t> row_indices);

std::vector<double> tridiag_eigvals(std::span<const double> diag, std::span<const double> offdiag);

/// Dense real symmetric eigendecomposition (Householder reduction + QL).
EigenDecomposition symmetric_eigh(const RealMatrix& a);

/// Knobs for the largest-singular-value iteration.
struct NormOptions {
  /// Target relative accuracy of the Rayleigh quotient of A^H A.
  double tolerance = 1e-13;
  /// Iteration cap is `cap_factor * max(rows, cols)`; then the dense fallback runs.
  std::size_t cap_factor = 50;
  std::uint64_t seed = 0;
};

/// Default options; the seed is read once from LAB_SEED (constant if unset).
const NormOptions& default_norm_options();

struct NormResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool used_fallback = false;
  bool fast_path = false;
};

NormResult operator_norm_detailed(const RealMatrix& a, const NormOptions& options = default_norm_options());
NormResult operator_norm_detailed(const ComplexMatrix& a,
                                  const NormOptions& options = default_norm_options());

/// Largest singular value.
double operator_norm(const RealMatrix& a);
double operator_norm(const ComplexMatrix& a);

/// Largest singular value through the dense eigensolve of A^T A only; used as
/// the fallback and as a cross-check.
double operator_norm_dense(const RealMatrix& a);

/// Real 2m x 2n matrix [[X, -Y], [Y, X]] of A = X + iY. Same singular values
/// (each doubled); A(a + ib) corresponds to the block product on [a; b].
RealMatrix realify(const ComplexMatrix& a);

/// AB - BA. O(n^2) when either operand is diagonal.
RealMatrix commutator(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |A(i,j) - conj(A(j,i))| <= tol * max(1, max|A|).
bool is_hermitian(const RealMatrix& a, double tol = 1e-12);
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// max |A(i,j) + conj(A(j,i))|.
double anti_hermitian_defect(const RealMatrix& a);
double anti_hermitian_defect(const ComplexMatrix& a);

}  // namespace splab::linalg
