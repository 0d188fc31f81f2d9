#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace splab::specfun {

/// Bessel function of the first kind J_p(x), integer order |p| <= 64.
///
/// Power series (long double) for |x| < 12, otherwise the integral
/// representation (1/pi) int_0^pi cos(p t - x sin t) dt on 256 trapezoid
/// intervals. Negative orders/arguments through parity.
double bessel_j(int p, double x);

/// Same as bessel_j but forcing one representation; used by the
/// cross-representation checks.
double bessel_j_series(int p, double x);
double bessel_j_integral(int p, double x, int intervals = 256);

/// Jacobi polynomial P_k^{(alpha, beta)}(x) by the three-term recurrence,
/// accumulated in long double.
long double jacobi_p(int k, double alpha, double beta, double x);

/// Closed form H_R(J_p)(0) = -(1 - (-1)^p) / (pi p); p != 0.
double hilbert_bessel_at_zero(int p);

/// The same quantity by quadrature of (1/pi) int_0^pi sin(-p t) dt
/// (64-node Gauss-Legendre). Independent check of the closed form.
double hilbert_bessel_at_zero_quadrature(int p);

/// int_0^inf trig(a x) J_p(x) / x dx in closed form, trig = sin for even p and
/// cos for odd p (the parity-matched half of the kernel):
/// arcsin(a) for p = 0, sin(p arcsin a)/p for even p, cos(p arcsin a)/p for odd p.
double cap_integral(double a, int p);

double log_factorial(int k);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] (Newton on P_n, Golub-Welsch-free).
Quadrature gauss_legendre(std::size_t n);

/// Integral of f over [lo, hi] with an n-node Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, std::size_t n = 64);

/// Trapezoid over one full period [lo, lo + period); spectrally accurate for
/// smooth periodic f.
double integrate_periodic(const std::function<double(double)>& f, double lo, double period, std::size_t n = 256);

}  // namespace splab::specfun
