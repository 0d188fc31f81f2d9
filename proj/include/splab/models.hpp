#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splab/dense_matrix.hpp"

namespace splab::models {

enum class Family { su2, su2_interval, su2_caps, ring, heisenberg, se2 };

std::string family_name(Family f);
/// Throws ContractError on unknown names.
Family parse_family(const std::string& name);

struct CommutatorReport {
  Family family = Family::su2;
  std::size_t n = 0;
  double a = 0.0;
  double b = 1.0;
  std::size_t K = 0;
  double norm = 0.0;
  std::size_t dim = 0;
  std::optional<RealMatrix> submatrix;
  /// Residual of the structural identity checked while building (block form,
  /// closed-form matrix elements); absent when no check ran.
  std::optional<double> block_check;
  std::string diagnostics;
};

/// [1_{(a(j+1/2), inf)}(J_x), 1_{(0, b(j+1/2)]}(J_z)].
RealMatrix su2_commutator_matrix(std::size_t n, double a, double b);
CommutatorReport su2_commutator(std::size_t n, double a = 0.0, double b = 1.0);

/// Both projections thresholded at a(j+1/2).
RealMatrix su2_caps_matrix(std::size_t n, double a);
CommutatorReport su2_caps_commutator(std::size_t n, double a);

/// c_{k,l} = P_{x,j,k,1-l} (n odd) or P_{x,j,-1/2+k,1/2-l} (n even), 1 <= k,l <= N.
RealMatrix su2_submatrix(std::size_t n, std::size_t N);

/// Membership of lambda_{k,n} = e^{2 pi i k / n} in E_a (exact integer test for a = 0).
bool grid_in_arc(long long k, std::size_t n, double a = 0.0);

/// First k >= 0 with lambda_{k,n} outside E_a; equals ceil(n/4) for a = 0.
long long boundary_index(std::size_t n, double a = 0.0);

double ring_entry(std::size_t n, long long k, long long l, double a = 0.0);
/// Modes -K..K, row/col index k + K.
RealMatrix ring_matrix(std::size_t n, std::size_t K, double a = 0.0);
CommutatorReport ring_commutator(std::size_t n, std::size_t K, double a = 0.0);
/// (c_{k0-k, k0+l-1}), 1 <= k,l <= N, read off the mode window K = max(4N+8, k0+N).
RealMatrix ring_submatrix(std::size_t n, std::size_t N, double a = 0.0);

/// (1/n) sum_m 1_{E_a}(2 pi m/n) e^{-2 pi i p m/n}.
std::complex<double> heisenberg_pairing(std::size_t n, long long p, double a = 0.0);

/// [Pi_1, Pi_2] in the delta basis: Pi_2 diagonal indicator, Pi_1 = F^* Pi_2 F.
ComplexMatrix heisenberg_matrix(std::size_t n, double a = 0.0);
/// Validates the closed form of F C F^* when n <= validate_up_to.
CommutatorReport heisenberg_commutator(std::size_t n, double a = 0.0, std::size_t validate_up_to = 256);
/// Real part of (F C F^*)_{k0-k, k0+l-1}; requires n > 4N.
RealMatrix heisenberg_submatrix(std::size_t n, std::size_t N, double a = 0.0);

/// [M_{1_E}, Pi] on modes -K..K.
RealMatrix se2_matrix(std::size_t K, double a = 0.0);
CommutatorReport se2_commutator(std::size_t K, double a = 0.0);

enum class Extremal { max, min };

struct ExtremalVector {
  std::vector<std::complex<double>> coefficients;
  double eigenvalue = 0.0;  // of iC
  bool degenerate = false;
};

/// Unit eigenvector of iC for its largest (max) or smallest (min) eigenvalue;
/// C must be anti-Hermitian. Phase fixed so the largest component is real positive.
ExtremalVector extremal_vector(const RealMatrix& c, Extremal which = Extremal::max);
ExtremalVector extremal_vector(const ComplexMatrix& c, Extremal which = Extremal::max);

}  // namespace splab::models
