#include "splab/spinrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "splab/errors.hpp"
#include "splab/linalg.hpp"
#include "splab/specfun.hpp"

namespace splab::spinrep {
namespace {

using specfun::log_factorial;

constexpr double kSignFloor = 1e-13;
constexpr double kSzegoDelta = 0.2;

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

// i^k for integer k
std::complex<double> i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_weights(HalfInt j, HalfInt mp, HalfInt m) {
  require(j.twice >= 0, "wigner_d: negative spin");
  const bool ok = (mp.twice - j.twice) % 2 == 0 && (m.twice - j.twice) % 2 == 0 &&
                  std::abs(mp.twice) <= j.twice && std::abs(m.twice) <= j.twice;
  require(ok, "wigner_d: weights (" + mp.str() + ", " + m.str() + ") out of range for j = " + j.str());
}

int lf_arg(HalfInt x) { return x.to_int(); }

// Jacobi form, valid for m >= |m'|.
double jacobi_direct(HalfInt j, HalfInt mp, HalfInt m, double theta) {
  const int k = int_diff(j, m);
  const int alpha = int_diff(m, mp);
  const int beta = (m + mp).to_int();
  const long double log_ratio = 0.5L * (log_factorial(lf_arg(j + m)) + log_factorial(lf_arg(j - m)) -
                                        log_factorial(lf_arg(j - mp)) - log_factorial(lf_arg(j + mp)));
  const long double s = std::sin(theta / 2.0);
  const long double c = std::cos(theta / 2.0);
  const long double pref = std::exp(log_ratio) * std::pow(s, alpha) * std::pow(c, beta);
  return static_cast<double>(pref * specfun::jacobi_p(k, alpha, beta, std::cos(theta)));
}

}  // namespace

SpinRep::SpinRep(std::size_t n) : n_(n) {
  require(n >= 2, "SpinRep: dimension must be at least 2 (got " + std::to_string(n) + ")");
  require(n <= (1u << 20), "SpinRep: dimension too large");
}

HalfInt SpinRep::weight(std::size_t index) const {
  require(index < n_, "SpinRep::weight: index out of range");
  return HalfInt::from_twice(static_cast<int>(n_) - 1 - 2 * static_cast<int>(index));
}

bool SpinRep::contains(HalfInt m) const {
  const int tj = static_cast<int>(n_) - 1;
  return std::abs(m.twice) <= tj && (tj - m.twice) % 2 == 0;
}

std::size_t SpinRep::index_of(HalfInt m) const {
  require(contains(m), "SpinRep: weight " + m.str() + " not in the lattice of n = " + std::to_string(n_));
  return static_cast<std::size_t>((static_cast<int>(n_) - 1 - m.twice) / 2);
}

std::vector<HalfInt> SpinRep::weights() const {
  std::vector<HalfInt> w;
  w.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) w.push_back(weight(i));
  return w;
}

ComplexMatrix SpinOperators::jy() const {
  const std::size_t n = jz.rows();
  ComplexMatrix y(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y(i, i + 1) = cplx(0.0, -0.5 * ladder[i]);
    y(i + 1, i) = cplx(0.0, 0.5 * ladder[i]);
  }
  return y;
}

std::vector<double> SpinOperators::jx_offdiag() const {
  std::vector<double> off(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) off[i] = 0.5 * ladder[i];
  return off;
}

SpinOperators build_spin_operators(const SpinRep& rep) {
  const std::size_t n = rep.n();
  const double j = rep.j().value();
  SpinOperators ops{RealMatrix(n, n), RealMatrix(n, n), std::vector<double>(n - 1)};
  for (std::size_t i = 0; i < n; ++i) ops.jz(i, i) = rep.weight(i).value();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double m = rep.weight(i + 1).value();
    ops.ladder[i] = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    ops.jx(i, i + 1) = ops.jx(i + 1, i) = 0.5 * ops.ladder[i];
  }
  return ops;
}

double wigner_d_sum(HalfInt j, HalfInt mp, HalfInt m, double theta) {
  check_weights(j, mp, m);
  const int jpm = (j + m).to_int(), jmm = (j - m).to_int();
  const int jpmp = (j + mp).to_int(), jmmp = (j - mp).to_int();
  const int diff = int_diff(mp, m);
  const double log_num = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const int s_lo = std::max(0, -diff);
  const int s_hi = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = s_lo; k <= s_hi; ++k) {
    const double log_den = log_factorial(jpm - k) + log_factorial(k) + log_factorial(diff + k) + log_factorial(jmmp - k);
    const int pc = jpm + jmmp - 2 * k;  // 2j + m - m' - 2k
    const int ps = diff + 2 * k;
    sum += sign_pow(diff + k) * std::exp(log_num - log_den) * std::pow(c, pc) * std::pow(s, ps);
  }
  return sum;
}

double wigner_d_jacobi(HalfInt j, HalfInt mp, HalfInt m, double theta) {
  check_weights(j, mp, m);
  const int am = std::abs(m.twice), amp = std::abs(mp.twice);
  if (m.twice >= amp) return jacobi_direct(j, mp, m, theta);
  if (mp.twice >= am) return sign_pow(int_diff(m, mp)) * jacobi_direct(j, m, mp, theta);
  if (-m.twice >= amp) return sign_pow(int_diff(mp, m)) * jacobi_direct(j, -mp, -m, theta);
  return jacobi_direct(j, -m, -mp, theta);
}

double WignerDMatrix::operator()(HalfInt mp, HalfInt m) const {
  const SpinRep rep(entries.rows());
  return entries(rep.index_of(mp), rep.index_of(m));
}

WignerDMatrix wigner_d_pi_half(const SpinRep& rep, const PiHalfOptions& options) {
  const std::size_t n = rep.n();
  const auto ops = build_spin_operators(rep);
  const std::vector<double> diag(n, 0.0);
  const auto eig = linalg::tridiag_eigh(diag, ops.jx_offdiag());

  WignerDMatrix d{rep.j(), std::numbers::pi / 2.0, RealMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t k = n - 1 - c;  // eigenvalues ascend, mu = j - c descends
    const HalfInt mu = rep.weight(c);
    double sign;
    const double top = eig.eigenvectors(0, k);
    if (std::abs(top) >= kSignFloor) {
      // d^j_{j,mu}(pi/2) has sign (-1)^{j - mu}
      sign = (top > 0 ? 1.0 : -1.0) * sign_pow(static_cast<int>(c));
    } else {
      std::size_t best = 0;
      for (std::size_t r = 1; r < n; ++r)
        if (std::abs(eig.eigenvectors(r, k)) > std::abs(eig.eigenvectors(best, k))) best = r;
      const double ref = wigner_d_jacobi(rep.j(), rep.weight(best), mu, std::numbers::pi / 2.0);
      if (std::abs(ref) < kSignFloor) {
        throw ConvergenceError("wigner_d_pi_half: sign calibration ambiguous for column mu = " + mu.str());
      }
      sign = ((eig.eigenvectors(best, k) > 0) == (ref > 0)) ? 1.0 : -1.0;
    }
    if (options.inject_sign_flip && c == n / 2) sign = -sign;
    for (std::size_t r = 0; r < n; ++r) d.entries(r, c) = sign * eig.eigenvectors(r, k);
  }
  return d;
}

WignerDMatrix wigner_d_matrix_sum(const SpinRep& rep, double theta) {
  const std::size_t n = rep.n();
  WignerDMatrix d{rep.j(), theta, RealMatrix(n, n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d.entries(r, c) = wigner_d_sum(rep.j(), rep.weight(r), rep.weight(c), theta);
  return d;
}

bool above_threshold(HalfInt mu, double a, std::size_t n) {
  const double nn = static_cast<double>(n);
  return mu.twice - a * nn > 1e-12 * nn;
}

namespace {

void check_a(double a) { require(a >= 0.0 && a < 1.0, "projection: a must lie in [0, 1), got " + std::to_string(a)); }

// Number of selected eigenvalues (they are the top ones); eigenvalues are
// snapped to the lattice {-j, ..., j} before the threshold test.
std::size_t selected_count(const SpinRep& rep, const std::vector<double>& eigenvalues, double a) {
  const std::size_t n = rep.n();
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const HalfInt mu = HalfInt::from_twice(2 * static_cast<int>(k) - static_cast<int>(n) + 1);
    if (std::abs(eigenvalues[k] - mu.value()) > 1e-6 * (1.0 + mu.value() * mu.value())) {
      throw ConvergenceError("projection_x: eigenvalue " + std::to_string(eigenvalues[k]) +
                             " does not snap to lattice point " + mu.str());
    }
    if (above_threshold(mu, a, n)) ++count;
  }
  return count;
}

}  // namespace

ProjectionMatrix projection_x(const SpinRep& rep, double a) {
  check_a(a);
  const std::size_t n = rep.n();
  const auto ops = build_spin_operators(rep);
  const std::vector<double> diag(n, 0.0);
  const auto eig = linalg::tridiag_eigh(diag, ops.jx_offdiag());
  const std::size_t k0 = n - selected_count(rep, eig.eigenvalues, a);
  ProjectionMatrix p{rep, a, RealMatrix(n, n)};
  const auto& v = eig.eigenvectors;
  for (std::size_t r = 0; r < n; ++r) {
    auto vr = v.row(r);
    for (std::size_t c = r; c < n; ++c) {
      auto vc = v.row(c);
      double s = 0.0;
      for (std::size_t k = k0; k < n; ++k) s += vr[k] * vc[k];
      p.entries(r, c) = p.entries(c, r) = s;
    }
  }
  return p;
}

ProjectionMatrix projection_x_from_d(const WignerDMatrix& d, double a) {
  check_a(a);
  const std::size_t n = d.entries.rows();
  const SpinRep rep(n);
  ProjectionMatrix p{rep, a, RealMatrix(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (above_threshold(rep.weight(k), a, n)) s += d.entries(c, k) * d.entries(r, k);
      p.entries(r, c) = p.entries(c, r) = s;
    }
  }
  return p;
}

RealMatrix projection_x_block(const SpinRep& rep, double a, const std::vector<HalfInt>& weights) {
  check_a(a);
  require(!weights.empty(), "projection_x_block: no weights requested");
  const std::size_t n = rep.n();
  std::vector<std::size_t> idx;
  for (const auto& w : weights) idx.push_back(rep.index_of(w));
  const auto ops = build_spin_operators(rep);
  const std::vector<double> diag(n, 0.0);
  const auto part = linalg::tridiag_eigh_rows(diag, ops.jx_offdiag(), idx);
  const std::size_t k0 = n - selected_count(rep, part.eigenvalues, a);
  const std::size_t w = weights.size();
  RealMatrix p(w, w);
  for (std::size_t r = 0; r < w; ++r) {
    for (std::size_t c = r; c < w; ++c) {
      double s = 0.0;
      for (std::size_t k = k0; k < n; ++k) s += part.rows(r, k) * part.rows(c, k);
      p(r, c) = p(c, r) = s;
    }
  }
  return p;
}

double projection_x_entry(const SpinRep& rep, double a, HalfInt mp, HalfInt m) {
  if (mp == m) return projection_x_block(rep, a, {m})(0, 0);
  return projection_x_block(rep, a, {mp, m})(0, 1);
}

RealMatrix projection_z_interval(const SpinRep& rep, double b) {
  require(b > 0.0 && b <= 1.0, "projection_z_interval: b must lie in (0, 1], got " + std::to_string(b));
  const std::size_t n = rep.n();
  const double limit = b * static_cast<double>(n);  // twice of b (j + 1/2)
  RealMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int tm = rep.weight(i).twice;
    if (tm > 0 && tm <= limit + 1e-12 * static_cast<double>(n)) q(i, i) = 1.0;
  }
  return q;
}

RealMatrix projection_z_above(const SpinRep& rep, double a) {
  check_a(a);
  const std::size_t n = rep.n();
  RealMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (above_threshold(rep.weight(i), a, n)) q(i, i) = 1.0;
  return q;
}

std::complex<double> FourierExpansion::evaluate(double theta) const {
  std::complex<double> s{};
  for (const auto& [mu, c] : coefficients) s += c * std::polar(1.0, -mu.value() * theta);
  return i_pow(int_diff(m, mp)) * s;
}

std::complex<double> FourierExpansion::mean() const {
  for (const auto& [mu, c] : coefficients)
    if (mu.twice == 0) return i_pow(int_diff(m, mp)) * c;
  return {};
}

std::complex<double> FourierExpansion::hilbert_at_zero() const {
  double s = 0.0;
  for (const auto& [mu, c] : coefficients) {
    if (mu.twice > 0) s += c;
    if (mu.twice < 0) s -= c;
  }
  return i_pow(int_diff(m, mp) + 1) * s;
}

FourierExpansion fourier_expansion_d(const WignerDMatrix& d, HalfInt mp, HalfInt m) {
  const SpinRep rep(d.entries.rows());
  const std::size_t im = rep.index_of(m), imp = rep.index_of(mp);
  FourierExpansion e{mp, m, {}};
  for (std::size_t k = 0; k < rep.n(); ++k)
    e.coefficients.emplace_back(rep.weight(k), d.entries(im, k) * d.entries(imp, k));
  return e;
}

HilbertCheck verify_hilbert_formula(const SpinRep& rep) {
  const auto d = wigner_d_pi_half(rep);
  const auto p = projection_x(rep, 0.0);
  HilbertCheck out;
  const std::size_t n = rep.n();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const HalfInt mp = rep.weight(r), m = rep.weight(c);
      const auto e = fourier_expansion_d(d, mp, m);
      const int k = int_diff(mp, m);
      const double delta = (r == c) ? 1.0 : 0.0;
      std::complex<double> value;
      if (k % 2 == 0) {
        value = 0.5 * i_pow(k) * (delta - e.mean());
      } else {
        value = std::complex<double>(0.0, -0.5) * i_pow(k) * e.hilbert_at_zero();
      }
      const double res = std::abs(value - p.entries(r, c));
      if (k % 2 == 0)
        out.even_residual = std::max(out.even_residual, res);
      else
        out.odd_residual = std::max(out.odd_residual, res);
    }
  }
  out.max_residual = std::max(out.even_residual, out.odd_residual);
  return out;
}

SzegoTerm szego_approximation(HalfInt j, HalfInt mp, HalfInt m, double theta) {
  check_weights(j, mp, m);
  const int p = int_diff(m, mp);
  require(p >= -1, "szego_approximation: needs m - m' >= -1");
  require(theta > 0.0 && theta <= std::numbers::pi - kSzegoDelta,
          "szego_approximation: theta outside (0, pi - 0.2]");
  const double log_c = 0.5 * (log_factorial((j - mp).to_int()) + log_factorial((j + m).to_int()) -
                              log_factorial((j - m).to_int()) - log_factorial((j + mp).to_int())) -
                       p * std::log(j.value() + 0.5);
  const double c = std::exp(log_c);
  const double x = (2.0 * j.value() + 1.0) * theta / 2.0;
  return {c * std::sqrt(theta / std::sin(theta)) * specfun::bessel_j(p, x), c};
}

double szego_sup_error(HalfInt j, HalfInt mp, HalfInt m) {
  constexpr int kPoints = 401;
  const double lo = 0.01, hi = std::numbers::pi / 2.0;
  double sup = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double theta = lo + (hi - lo) * i / (kPoints - 1);
    const double exact = wigner_d_jacobi(j, mp, m, theta);
    const double approx = szego_approximation(j, mp, m, theta).approx;
    sup = std::max(sup, std::abs(exact - approx) / std::sqrt(theta));
  }
  return sup;
}

}  // namespace splab::spinrep
