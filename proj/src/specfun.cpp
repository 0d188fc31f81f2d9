#include "splab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "splab/errors.hpp"

namespace splab::specfun {
namespace {

constexpr int kMaxOrder = 64;
constexpr double kSeriesCrossover = 12.0;

void check_order(int p) {
  require(p >= -kMaxOrder && p <= kMaxOrder,
          "bessel_j: order " + std::to_string(p) + " outside [-64, 64]");
}

// J_p(x) for p >= 0, x >= 0.
double series_nonneg(int p, double x) {
  if (x == 0.0) return p == 0 ? 1.0 : 0.0;
  const long double half = static_cast<long double>(x) / 2.0L;
  const long double q = half * half;
  long double term = std::exp(static_cast<long double>(p) * std::log(half) - std::lgamma(static_cast<long double>(p) + 1.0L));
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<long double>(k) * static_cast<long double>(k + p));
    sum += term;
    if (std::abs(term) <= 1e-21L * std::abs(sum) && static_cast<long double>(k) > half) break;
  }
  return static_cast<double>(sum);
}

double integral_nonneg(int p, double x, int intervals) {
  // (1/pi) int_0^pi cos(p t - x sin t) dt. The integrand is even and 2pi-periodic,
  // so the half-weighted trapezoid on [0, pi] is the periodic rule.
  const double h = std::numbers::pi / intervals;
  double sum = 0.5 * (std::cos(-0.0) + std::cos(p * std::numbers::pi));
  for (int k = 1; k < intervals; ++k) {
    const double t = k * h;
    sum += std::cos(p * t - x * std::sin(t));
  }
  return sum * h / std::numbers::pi;
}

// Reduce to p >= 0, x >= 0; returns the sign to apply.
double reduce(int& p, double& x) {
  double sign = 1.0;
  if (p < 0) {
    p = -p;
    if (p % 2) sign = -sign;
  }
  if (x < 0) {
    x = -x;
    if (p % 2) sign = -sign;
  }
  return sign;
}

}  // namespace

double bessel_j_series(int p, double x) {
  check_order(p);
  require(std::isfinite(x), "bessel_j: non-finite argument");
  const double s = reduce(p, x);
  return s * series_nonneg(p, x);
}

double bessel_j_integral(int p, double x, int intervals) {
  check_order(p);
  require(std::isfinite(x), "bessel_j: non-finite argument");
  require(intervals >= 2, "bessel_j_integral: need at least 2 intervals");
  const double s = reduce(p, x);
  return s * integral_nonneg(p, x, intervals);
}

double bessel_j(int p, double x) {
  check_order(p);
  require(std::isfinite(x), "bessel_j: non-finite argument");
  const double s = reduce(p, x);
  return s * (x < kSeriesCrossover ? series_nonneg(p, x) : integral_nonneg(p, x, 256));
}

long double jacobi_p(int k, double alpha, double beta, double x) {
  require(k >= 0, "jacobi_p: negative degree");
  require(alpha > -1.0 && beta > -1.0, "jacobi_p: need alpha, beta > -1");
  require(x >= -1.0 && x <= 1.0, "jacobi_p: x outside [-1, 1]");
  const long double a = alpha, b = beta, xx = x;
  long double p0 = 1.0L;
  if (k == 0) return p0;
  long double p1 = (a + 1.0L) + (a + b + 2.0L) * (xx - 1.0L) / 2.0L;
  for (int n = 2; n <= k; ++n) {
    const long double nn = n;
    const long double s = 2.0L * nn + a + b;
    const long double c0 = 2.0L * nn * (nn + a + b) * (s - 2.0L);
    const long double c1 = (s - 1.0L) * (s * (s - 2.0L) * xx + a * a - b * b);
    const long double c2 = 2.0L * (nn + a - 1.0L) * (nn + b - 1.0L) * s;
    const long double p2 = (c1 * p1 - c2 * p0) / c0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double hilbert_bessel_at_zero(int p) {
  require(p != 0, "hilbert_bessel_at_zero: p = 0 is not covered");
  if (p % 2 == 0) return 0.0;
  return -2.0 / (std::numbers::pi * p);
}

double hilbert_bessel_at_zero_quadrature(int p) {
  require(p != 0, "hilbert_bessel_at_zero: p = 0 is not covered");
  // integrand sin(x sin t - p t) at x = 0
  const auto f = [p](double t) { return std::sin(-p * t); };
  return integrate_gl(f, 0.0, std::numbers::pi, 64) / std::numbers::pi;
}

double cap_integral(double a, int p) {
  require(a >= 0.0 && a < 1.0, "cap_integral: a must lie in [0, 1)");
  const double s = std::asin(a);
  if (p == 0) return s;
  if (p % 2 == 0) return std::sin(p * s) / p;
  return std::cos(p * s) / p;
}

double log_factorial(int k) {
  require(k >= 0, "log_factorial: negative argument");
  return std::lgamma(static_cast<double>(k) + 1.0);
}

Quadrature gauss_legendre(std::size_t n) {
  require(n >= 1, "gauss_legendre: need at least one node");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return q;
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  static const Quadrature q64 = gauss_legendre(64);
  const Quadrature q = n == 64 ? q64 : gauss_legendre(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(mid + half * q.nodes[i]);
  return s * half;
}

double integrate_periodic(const std::function<double(double)>& f, double lo, double period, std::size_t n) {
  require(n >= 1, "integrate_periodic: need at least one node");
  const double h = period / n;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += f(lo + k * h);
  return s * h;
}

}  // namespace splab::specfun
