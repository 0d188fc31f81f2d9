#include "splab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "splab/errors.hpp"
#include "splab/hankel.hpp"
#include "splab/linalg.hpp"
#include "splab/spinrep.hpp"

namespace splab::models {
namespace {

using hankel::ArcSymbol;
using hankel::fourier_coeff;
using spinrep::SpinRep;

void check_a(double a) { require(a >= 0.0 && a < 1.0, "a must lie in [0, 1), got " + std::to_string(a)); }

long long mod(long long k, long long n) { return ((k % n) + n) % n; }

// e^{-2 pi i r / n}
cplx root_of_unity(long long r, std::size_t n) {
  const double t = -2.0 * std::numbers::pi * static_cast<double>(mod(r, static_cast<long long>(n))) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

std::vector<double> grid_indicator(std::size_t n, double a) {
  std::vector<double> d(n);
  for (std::size_t m = 0; m < n; ++m) d[m] = grid_in_arc(static_cast<long long>(m), n, a) ? 1.0 : 0.0;
  return d;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::su2: return "su2";
    case Family::su2_interval: return "su2_interval";
    case Family::su2_caps: return "su2_caps";
    case Family::ring: return "ring";
    case Family::heisenberg: return "heisenberg";
    case Family::se2: return "se2";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::su2, Family::su2_interval, Family::su2_caps, Family::ring, Family::heisenberg, Family::se2})
    if (family_name(f) == name) return f;
  throw ContractError("unknown family '" + name + "'");
}

// ---- SU(2) ----

RealMatrix su2_commutator_matrix(std::size_t n, double a, double b) {
  const SpinRep rep(n);
  const auto p = spinrep::projection_x(rep, a);
  const auto q = spinrep::projection_z_interval(rep, b);
  return linalg::commutator(p.entries, q);
}

CommutatorReport su2_commutator(std::size_t n, double a, double b) {
  check_a(a);
  require(b > 0.0 && b <= 1.0, "su2_commutator: b must lie in (0, 1]");
  const SpinRep rep(n);
  CommutatorReport r;
  r.family = (a == 0.0 && b == 1.0) ? Family::su2 : Family::su2_interval;
  r.n = n;
  r.a = a;
  r.b = b;
  r.dim = n;

  const auto p = spinrep::projection_x(rep, a);
  const auto q = spinrep::projection_z_interval(rep, b);
  const RealMatrix c = linalg::commutator(p.entries, q);
  if (a == 0.0 && b == 1.0) {
    // rows/cols split into m > 0 (first h) and m <= 0
    const std::size_t h = n / 2;
    const RealMatrix p2 = p.entries.block(0, h, h, n - h);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const bool top_i = i < h, top_k = k < h;
        double expected = 0.0;
        if (top_i && !top_k) expected = -p2(i, k - h);
        if (!top_i && top_k) expected = p2(k, i - h);
        res = std::max(res, std::abs(c(i, k) - expected));
      }
    }
    r.block_check = res;
    r.norm = linalg::operator_norm(p2);
  } else {
    r.norm = linalg::operator_norm(c);
  }
  return r;
}

RealMatrix su2_caps_matrix(std::size_t n, double a) {
  const SpinRep rep(n);
  const auto p = spinrep::projection_x(rep, a);
  const auto q = spinrep::projection_z_above(rep, a);
  return linalg::commutator(p.entries, q);
}

CommutatorReport su2_caps_commutator(std::size_t n, double a) {
  check_a(a);
  CommutatorReport r;
  r.family = Family::su2_caps;
  r.n = n;
  r.a = a;
  r.b = a;
  r.dim = n;
  r.norm = linalg::operator_norm(su2_caps_matrix(n, a));
  return r;
}

RealMatrix su2_submatrix(std::size_t n, std::size_t N) {
  const SpinRep rep(n);
  require(N >= 1, "su2_submatrix: N must be at least 1");
  require(rep.j().twice > 2 * static_cast<int>(N), "su2_submatrix: needs j > N");
  const bool odd = n % 2 == 1;
  // row weights k (or -1/2 + k), column weights 1 - l (or 1/2 - l)
  std::vector<HalfInt> weights;
  for (std::size_t k = 1; k <= N; ++k)
    weights.push_back(odd ? HalfInt::from_int(static_cast<int>(k)) : HalfInt::from_twice(2 * static_cast<int>(k) - 1));
  for (std::size_t l = 1; l <= N; ++l)
    weights.push_back(odd ? HalfInt::from_int(1 - static_cast<int>(l)) : HalfInt::from_twice(1 - 2 * static_cast<int>(l)));
  const RealMatrix block = spinrep::projection_x_block(rep, 0.0, weights);
  RealMatrix c(N, N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t l = 0; l < N; ++l) c(k, l) = block(k, N + l);
  return c;
}

// ---- ring ----

bool grid_in_arc(long long k, std::size_t n, double a) {
  require(n >= 1, "grid_in_arc: n must be positive");
  const long long nn = static_cast<long long>(n);
  const long long r = mod(k, nn);
  if (a == 0.0) return 4 * r < nn || 4 * r > 3 * nn;
  const long long folded = std::min(r, nn - r);
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(folded) / static_cast<double>(n)) - a > 1e-13;
}

long long boundary_index(std::size_t n, double a) {
  long long k = 0;
  while (grid_in_arc(k, n, a)) ++k;
  return k;
}

double ring_entry(std::size_t n, long long k, long long l, double a) {
  const ArcSymbol sym(a);
  const double in_l = grid_in_arc(l, n, a) ? 1.0 : 0.0;
  const double in_k = grid_in_arc(k, n, a) ? 1.0 : 0.0;
  return (in_l - in_k) * fourier_coeff(sym, k - l);
}

RealMatrix ring_matrix(std::size_t n, std::size_t K, double a) {
  require(n >= 2, "ring: n must be at least 2");
  require(K >= 1, "ring: K must be at least 1");
  check_a(a);
  const long long kk = static_cast<long long>(K);
  RealMatrix c(2 * K + 1, 2 * K + 1);
  for (long long k = -kk; k <= kk; ++k)
    for (long long l = -kk; l <= kk; ++l) c(k + kk, l + kk) = ring_entry(n, k, l, a);
  return c;
}

CommutatorReport ring_commutator(std::size_t n, std::size_t K, double a) {
  CommutatorReport r;
  r.family = Family::ring;
  r.n = n;
  r.a = a;
  r.K = K;
  r.dim = 2 * K + 1;
  r.norm = linalg::operator_norm(ring_matrix(n, K, a));
  return r;
}

RealMatrix ring_submatrix(std::size_t n, std::size_t N, double a) {
  require(N >= 1, "ring_submatrix: N must be at least 1");
  require(n > 4 * N, "ring_submatrix: needs n > 4N");
  const long long k0 = boundary_index(n, a);
  const long long nn = static_cast<long long>(N);
  const std::size_t K = static_cast<std::size_t>(std::max(4 * nn + 8, k0 + nn));
  const RealMatrix c = ring_matrix(n, K, a);
  const long long off = static_cast<long long>(K);
  RealMatrix s(N, N);
  for (long long k = 1; k <= nn; ++k)
    for (long long l = 1; l <= nn; ++l) s(k - 1, l - 1) = c(k0 - k + off, k0 + l - 1 + off);
  return s;
}

// ---- finite Heisenberg ----

std::complex<double> heisenberg_pairing(std::size_t n, long long p, double a) {
  require(n >= 1, "heisenberg_pairing: n must be positive");
  const auto d = grid_indicator(n, a);
  std::complex<double> s{};
  for (std::size_t m = 0; m < n; ++m)
    if (d[m] != 0.0) s += root_of_unity(p * static_cast<long long>(m), n);
  return s / static_cast<double>(n);
}

namespace {

// F_{k,m} = e^{-2 pi i k m / n} / sqrt(n)
ComplexMatrix dft(std::size_t n) {
  ComplexMatrix f(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m) f(k, m) = s * root_of_unity(static_cast<long long>(k * m), n);
  return f;
}

}  // namespace

ComplexMatrix heisenberg_matrix(std::size_t n, double a) {
  require(n >= 2, "heisenberg: n must be at least 2");
  check_a(a);
  const auto d = grid_indicator(n, a);
  // Pi_1 = F^* diag(d) F is circulant: (Pi_1)_{m,m'} = g(m - m'),
  // g(t) = (1/n) sum_k d_k e^{2 pi i k t / n}.
  std::vector<cplx> g(n);
  for (std::size_t t = 0; t < n; ++t) {
    cplx s{};
    for (std::size_t k = 0; k < n; ++k)
      if (d[k] != 0.0) s += root_of_unity(-static_cast<long long>(k * t), n);
    g[t] = s / static_cast<double>(n);
  }
  ComplexMatrix pi1(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t mp = 0; mp < n; ++mp) pi1(m, mp) = g[static_cast<std::size_t>(mod(static_cast<long long>(m) - static_cast<long long>(mp), static_cast<long long>(n)))];
  std::vector<cplx> dc(d.begin(), d.end());
  const ComplexMatrix pi2 = ComplexMatrix::diagonal(dc);
  return linalg::commutator(pi1, pi2);
}

CommutatorReport heisenberg_commutator(std::size_t n, double a, std::size_t validate_up_to) {
  const ComplexMatrix c = heisenberg_matrix(n, a);
  CommutatorReport r;
  r.family = Family::heisenberg;
  r.n = n;
  r.a = a;
  r.dim = n;
  r.norm = linalg::operator_norm(c);
  if (n <= validate_up_to) {
    // F C F^* against (1_E(lambda_k) - 1_E(lambda_l)) <A_n(1_E), A_n(z^{k-l})>
    const ComplexMatrix f = dft(n);
    const ComplexMatrix ce = multiply(multiply(f, c), f.adjoint());
    const auto d = grid_indicator(n, a);
    std::vector<cplx> pairing(2 * n - 1);
    for (std::size_t t = 0; t < pairing.size(); ++t)
      pairing[t] = heisenberg_pairing(n, static_cast<long long>(t) - static_cast<long long>(n - 1), a);
    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const cplx expected = (d[k] - d[l]) * pairing[k + n - 1 - l];
        res = std::max(res, std::abs(ce(k, l) - expected));
      }
    r.block_check = res;
  }
  return r;
}

RealMatrix heisenberg_submatrix(std::size_t n, std::size_t N, double a) {
  require(N >= 1, "heisenberg_submatrix: N must be at least 1");
  require(n > 4 * N, "heisenberg_submatrix: needs n > 4N");
  const ComplexMatrix c = heisenberg_matrix(n, a);
  const long long k0 = boundary_index(n, a);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  RealMatrix b(N, N);
  for (std::size_t l = 1; l <= N; ++l) {
    const long long col = k0 + static_cast<long long>(l) - 1;
    // y = C F^*[:, col]
    std::vector<cplx> fcol(n);
    for (std::size_t m = 0; m < n; ++m) fcol[m] = s * std::conj(root_of_unity(col * static_cast<long long>(m), n));
    const auto y = multiply<cplx>(c, fcol);
    for (std::size_t k = 1; k <= N; ++k) {
      const long long row = k0 - static_cast<long long>(k);
      cplx v{};
      for (std::size_t m = 0; m < n; ++m) v += s * root_of_unity(row * static_cast<long long>(m), n) * y[m];
      b(k - 1, l - 1) = v.real();
    }
  }
  return b;
}

// ---- SE(2) / line ----

RealMatrix se2_matrix(std::size_t K, double a) {
  require(K >= 1, "se2: K must be at least 1");
  const ArcSymbol sym(a);
  const long long kk = static_cast<long long>(K);
  RealMatrix c(2 * K + 1, 2 * K + 1);
  for (long long k = -kk; k <= kk; ++k) {
    for (long long l = -kk; l <= kk; ++l) {
      const double pk = k >= 0 ? 1.0 : 0.0, pl = l >= 0 ? 1.0 : 0.0;
      c(k + kk, l + kk) = fourier_coeff(sym, k - l) * (pl - pk);
    }
  }
  return c;
}

CommutatorReport se2_commutator(std::size_t K, double a) {
  const RealMatrix c = se2_matrix(K, a);
  const ArcSymbol sym(a);
  const RealMatrix h = hankel::hankel_truncation(sym, K);
  const long long kk = static_cast<long long>(K);
  double res = 0.0;
  for (long long k = -kk; k <= kk; ++k) {
    for (long long l = -kk; l <= kk; ++l) {
      const double v = c(k + kk, l + kk);
      double expected = 0.0;
      if (k < 0 && l >= 0) {
        // row k' = -k, column l' = l + 1 of the Hankel matrix
        const std::size_t kp = static_cast<std::size_t>(-k), lp = static_cast<std::size_t>(l + 1);
        expected = lp <= K ? h(kp - 1, lp - 1) : fourier_coeff(sym, 1 - static_cast<long long>(kp + lp));
      } else if (k >= 0 && l < 0) {
        const std::size_t kp = static_cast<std::size_t>(-l), lp = static_cast<std::size_t>(k + 1);
        expected = -(lp <= K ? h(kp - 1, lp - 1) : fourier_coeff(sym, 1 - static_cast<long long>(kp + lp)));
      }
      res = std::max(res, std::abs(v - expected));
    }
  }
  CommutatorReport r;
  r.family = Family::se2;
  r.n = 2 * K + 1;
  r.a = a;
  r.K = K;
  r.dim = 2 * K + 1;
  r.block_check = res;
  r.norm = linalg::operator_norm(c);
  return r;
}

// ---- extremal vectors ----

ExtremalVector extremal_vector(const ComplexMatrix& c, Extremal which) {
  require(c.is_square(), "extremal_vector: matrix must be square");
  const double defect = linalg::anti_hermitian_defect(c);
  require(defect <= 1e-10 * std::max(1.0, c.max_abs()), "extremal_vector: matrix is not anti-Hermitian");
  const std::size_t n = c.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = cplx(0.0, 1.0) * c(i, j);
  // symmetrize away rounding before the real embedding
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const cplx avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  const auto eig = linalg::symmetric_eigh(linalg::realify(h));
  const std::size_t pick = which == Extremal::max ? 2 * n - 1 : 0;
  ExtremalVector out;
  out.eigenvalue = eig.eigenvalues[pick];
  std::size_t close = 0;
  for (double ev : eig.eigenvalues)
    if (std::abs(ev - out.eigenvalue) <= 1e-10) ++close;
  out.degenerate = close > 2;

  out.coefficients.resize(n);
  double norm = 0.0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.coefficients[i] = {eig.eigenvectors(i, pick), eig.eigenvectors(i + n, pick)};
    norm += std::norm(out.coefficients[i]);
    if (std::abs(out.coefficients[i]) > std::abs(out.coefficients[big])) big = i;
  }
  const cplx phase = std::abs(out.coefficients[big]) > 0 ? std::conj(out.coefficients[big]) / std::abs(out.coefficients[big]) : cplx(1.0);
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& z : out.coefficients) z *= phase * inv;
  out.coefficients[big] = std::abs(out.coefficients[big]);
  return out;
}

ExtremalVector extremal_vector(const RealMatrix& c, Extremal which) { return extremal_vector(to_complex(c), which); }

}  // namespace splab::models
