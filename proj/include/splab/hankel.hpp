#pragma once

#include <cstddef>

#include "splab/dense_matrix.hpp"

namespace splab::hankel {

/// Indicator of the arc E_a = {z on the unit circle : Re z > a}, a in [0, 1).
struct ArcSymbol {
  double a = 0.0;
  double alpha = 0.0;  // arccos(a)

  explicit ArcSymbol(double a_ = 0.0);

  /// Membership of e^{i t}; points with Re = a are outside.
  bool contains_angle(double t) const;
};

/// Fourier coefficient of 1_{E_a}: alpha/pi at p = 0, sin(p alpha)/(pi p) otherwise.
/// For a = 0 the sine is taken exactly from p mod 4.
double fourier_coeff(const ArcSymbol& sym, long long p);

/// [H]_N with h_{k,l} = coefficient at 1 - k - l (1-based k, l).
RealMatrix hankel_truncation(const ArcSymbol& sym, std::size_t N);

double truncated_norm(const ArcSymbol& sym, std::size_t N);

/// Upper certificate from a Nehari witness: inf over constants c of
/// ||1_{E_a} - c||_inf (shifting the symbol by a constant leaves the Hankel
/// operator unchanged).
double nehari_bound(const ArcSymbol& sym);

/// Jump value (1/2) lim_{t->0+} (phi(zeta e^{it}) - phi(zeta e^{-it})) at zeta = e^{i theta}.
double symbol_jump(const ArcSymbol& sym, double theta);

/// Radius of the essential spectrum from Power's description, using the
/// jumps of the arc indicator at +-1 and at the conjugate pair e^{+-i alpha}.
double power_essential_radius(const ArcSymbol& sym);

}  // namespace splab::hankel
