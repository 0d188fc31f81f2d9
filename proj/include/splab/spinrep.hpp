#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "splab/dense_matrix.hpp"
#include "splab/halfint.hpp"

namespace splab::spinrep {

/// Irreducible SU(2) representation of dimension n; basis index i carries the
/// weight m = j - i.
class SpinRep {
 public:
  explicit SpinRep(std::size_t n);

  std::size_t n() const { return n_; }
  HalfInt j() const { return HalfInt::from_twice(static_cast<int>(n_) - 1); }
  HalfInt weight(std::size_t index) const;
  std::size_t index_of(HalfInt m) const;
  bool contains(HalfInt m) const;
  std::vector<HalfInt> weights() const;

 private:
  std::size_t n_;
};

struct SpinOperators {
  RealMatrix jx;
  RealMatrix jz;
  /// ladder[i] = <m_i | J_+ | m_{i+1}> = sqrt(j(j+1) - m(m+1)), m = m_{i+1}.
  std::vector<double> ladder;

  ComplexMatrix jy() const;
  /// Tridiagonal data of J_x.
  std::vector<double> jx_offdiag() const;
};

SpinOperators build_spin_operators(const SpinRep& rep);

/// d^j_{m',m}(theta) by the explicit binomial sum (log-gamma weights).
/// Accurate for j <= 15; cancellation grows beyond.
double wigner_d_sum(HalfInt j, HalfInt mp, HalfInt m, double theta);

/// d^j_{m',m}(theta) through the Jacobi-polynomial form; stable for large j.
double wigner_d_jacobi(HalfInt j, HalfInt mp, HalfInt m, double theta);

/// Square (m', m)-indexed grid in SpinRep ordering.
struct WignerDMatrix {
  HalfInt j;
  double theta = 0.0;
  RealMatrix entries;

  double operator()(HalfInt mp, HalfInt m) const;
};

struct PiHalfOptions {
  /// Test hook: flips the calibrated sign of one column (mutation testing).
  bool inject_sign_flip = false;
};

/// d^j(pi/2) from the eigenvectors of J_x with per-column sign calibration.
WignerDMatrix wigner_d_pi_half(const SpinRep& rep, const PiHalfOptions& options = {});

/// Full grid from wigner_d_sum; only meaningful for small j.
WignerDMatrix wigner_d_matrix_sum(const SpinRep& rep, double theta);

/// True when the eigenvalue mu lies strictly above a (j + 1/2); near-ties
/// (within 1e-12 n) count as not above.
bool above_threshold(HalfInt mu, double a, std::size_t n);

struct ProjectionMatrix {
  SpinRep rep;
  double a;
  RealMatrix entries;
};

/// 1_{(a(j+1/2), inf)}(J_x) in the z-basis.
ProjectionMatrix projection_x(const SpinRep& rep, double a);

/// The same projection assembled from a d(pi/2) grid:
/// P_{m',m} = sum_{mu > a(j+1/2)} d_{m,mu} d_{m',mu}.
ProjectionMatrix projection_x_from_d(const WignerDMatrix& d, double a);

/// P restricted to rows/cols `weights` (in the given order); costs O(n^2 k).
RealMatrix projection_x_block(const SpinRep& rep, double a, const std::vector<HalfInt>& weights);

/// Single central entry P_{x,a,j,m',m}.
double projection_x_entry(const SpinRep& rep, double a, HalfInt mp, HalfInt m);

/// Diagonal 0/1 matrix selecting the weights 0 < m <= b (j + 1/2).
RealMatrix projection_z_interval(const SpinRep& rep, double b);

/// 1_{(a(j+1/2), inf)}(J_z).
RealMatrix projection_z_above(const SpinRep& rep, double a);

/// Fourier data of d^j_{m',m}: coefficient(mu) = d_{m,mu}(pi/2) d_{m',mu}(pi/2),
/// so that d^j_{m',m}(theta) = e^{i pi (m - m')/2} sum_mu coefficient(mu) e^{-i mu theta}.
struct FourierExpansion {
  HalfInt mp, m;
  std::vector<std::pair<HalfInt, double>> coefficients;  // mu from j down to -j

  std::complex<double> evaluate(double theta) const;
  /// Coefficient at mu = 0 times the phase (zero for half-integer j).
  std::complex<double> mean() const;
  /// Periodic Hilbert transform at theta = 0 (frequency -mu picks -i sgn(-mu)).
  std::complex<double> hilbert_at_zero() const;
};

FourierExpansion fourier_expansion_d(const WignerDMatrix& d, HalfInt mp, HalfInt m);

struct HilbertCheck {
  double max_residual = 0.0;
  double even_residual = 0.0;
  double odd_residual = 0.0;
};

/// Rebuilds P_{x,j} from delta, <d,1> and H(d)(0) by the case split on the
/// parity of m' - m, compares against projection_x.
HilbertCheck verify_hilbert_formula(const SpinRep& rep);

struct SzegoTerm {
  double approx;
  double c;
};

/// Main term C sqrt(theta/sin theta) J_{m-m'}((2j+1) theta / 2) and C.
SzegoTerm szego_approximation(HalfInt j, HalfInt mp, HalfInt m, double theta);

/// sup over 401 uniform theta in [0.01, pi/2] of |d - approx| / sqrt(theta).
double szego_sup_error(HalfInt j, HalfInt mp, HalfInt m);

}  // namespace splab::spinrep
