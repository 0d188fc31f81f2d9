#include "splab/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "splab/errors.hpp"
#include "splab/linalg.hpp"

namespace splab::hankel {

ArcSymbol::ArcSymbol(double a_) : a(a_), alpha(0.0) {
  require(a_ >= 0.0 && a_ < 1.0, "ArcSymbol: a must lie in [0, 1), got " + std::to_string(a_));
  alpha = std::acos(a_);
}

bool ArcSymbol::contains_angle(double t) const { return std::cos(t) - a > 0.0; }

double fourier_coeff(const ArcSymbol& sym, long long p) {
  if (p == 0) return sym.a == 0.0 ? 0.5 : sym.alpha / std::numbers::pi;
  const double pp = static_cast<double>(p);
  if (sym.a == 0.0) {
    // sin(pi p / 2) in {0, 1, 0, -1}
    const long long r = ((p % 4) + 4) % 4;
    if (r == 0 || r == 2) return 0.0;
    return (r == 1 ? 1.0 : -1.0) / (std::numbers::pi * pp);
  }
  return std::sin(pp * sym.alpha) / (std::numbers::pi * pp);
}

RealMatrix hankel_truncation(const ArcSymbol& sym, std::size_t N) {
  require(N >= 1, "hankel_truncation: N must be at least 1");
  // one coefficient per anti-diagonal
  std::vector<double> diag(2 * N - 1);
  for (std::size_t s = 0; s < diag.size(); ++s) diag[s] = fourier_coeff(sym, -static_cast<long long>(s) - 1);
  RealMatrix h(N, N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t l = 0; l < N; ++l) h(k, l) = diag[k + l];
  return h;
}

double truncated_norm(const ArcSymbol& sym, std::size_t N) {
  const RealMatrix h = hankel_truncation(sym, N);
  // Exact zeros split the matrix into a permuted direct sum (for a = 0 the
  // even and odd indices decouple); the norm is the largest block norm. Doing
  // it blockwise keeps plateaus in N bitwise flat.
  std::vector<int> comp(N, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < N; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t l = 0; l < N; ++l)
        if (h(k, l) != 0.0 && comp[l] < 0) comp[l] = ncomp, stack.push_back(l);
    }
    ++ncomp;
  }
  if (ncomp == 1) return linalg::operator_norm(h);
  double best = 0.0;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < N; ++k)
      if (comp[k] == c) idx.push_back(k);
    RealMatrix block(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t q = 0; q < idx.size(); ++q) block(r, q) = h(idx[r], idx[q]);
    best = std::max(best, linalg::operator_norm(block));
  }
  return best;
}

double nehari_bound(const ArcSymbol& sym) {
  // 1_{E_a} takes both values 0 and 1 for a in [0, 1); the best constant is
  // the midpoint of its range.
  (void)sym;
  const double lo = 0.0, hi = 1.0;
  const double c = 0.5 * (lo + hi);
  return std::max(hi - c, c - lo);
}

double symbol_jump(const ArcSymbol& sym, double theta) {
  constexpr double t = 1e-7;
  const double plus = sym.contains_angle(theta + t) ? 1.0 : 0.0;
  const double minus = sym.contains_angle(theta - t) ? 1.0 : 0.0;
  return 0.5 * (plus - minus);
}

double power_essential_radius(const ArcSymbol& sym) {
  // Segments [0, i phi_1] and [0, i phi_{-1}] from the real points, plus
  // [-r, r] with r = sqrt(-phi_z phi_zbar) for each conjugate pair.
  double radius = std::max(std::abs(symbol_jump(sym, 0.0)), std::abs(symbol_jump(sym, std::numbers::pi)));
  const double up = symbol_jump(sym, sym.alpha);
  const double down = symbol_jump(sym, -sym.alpha);
  const double prod = -up * down;
  if (prod > 0.0) radius = std::max(radius, std::sqrt(prod));
  return radius;
}

}  // namespace splab::hankel
