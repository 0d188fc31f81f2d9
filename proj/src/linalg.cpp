#include "splab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace splab::linalg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQlIterationsPerIndex = 60;
constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

void check_tridiagonal_input(std::span<const double> diag, std::span<const double> offdiag) {
  require(!diag.empty(), "tridiag_eigh: empty diagonal");
  require(offdiag.size() + 1 == diag.size(), "tridiag_eigh: len(offdiag) must be len(diag) - 1");
  for (double x : diag) require(std::isfinite(x), "tridiag_eigh: non-finite diagonal entry");
  for (double x : offdiag) require(std::isfinite(x), "tridiag_eigh: non-finite off-diagonal entry");
}

// Implicit-shift QL on (d, e) with e[i] coupling i and i+1 (e[n-1] unused).
// `w` holds transposed eigenvector rows: w(i, r) is component r of the i-th
// basis vector, so each Givens rotation touches two contiguous rows.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, RealMatrix* w) {
  const std::size_t n = d.size();
  const std::size_t width = w ? w->cols() : 0;
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= kEps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterationsPerIndex) {
          throw ConvergenceError("tridiag_eigh: QL iteration failed to converge at index " +
                                 std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (w) {
            auto wi = w->row(i);
            auto wi1 = w->row(i + 1);
            for (std::size_t k = 0; k < width; ++k) {
              const double t = wi1[k];
              wi1[k] = s * wi[k] + c * t;
              wi[k] = c * wi[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

std::vector<std::size_t> ascending_order(const std::vector<double>& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  return order;
}

// Solves the tridiagonal problem; w (n x width) enters as the transposed
// starting basis and leaves sorted to match the ascending eigenvalues.
std::vector<double> solve_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                                      RealMatrix* w) {
  check_tridiagonal_input(diag, offdiag);
  const std::size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  ql_implicit(d, e, w);

  const auto order = ascending_order(d);
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = d[order[k]];
  if (w) {
    RealMatrix permuted(n, w->cols());
    for (std::size_t k = 0; k < n; ++k) {
      auto src = w->row(order[k]);
      std::copy(src.begin(), src.end(), permuted.row(k).begin());
    }
    *w = std::move(permuted);
  }
  return sorted;
}

// Householder reduction of a symmetric matrix to tridiagonal form. On return
// `q` holds the orthogonal transform (A = Q T Q^T), `d`/`e` the tridiagonal.
void householder_tridiagonalize(const RealMatrix& a, RealMatrix& q, std::vector<double>& d,
                                std::vector<double>& e) {
  const std::size_t n = a.rows();
  q = a;
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) d[j] = q(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = q(i - 1, j);
        q(i, j) = 0.0;
        q(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        q(j, i) = f;
        g = e[j] + q(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += q(k, j) * d[k];
          e[k] += q(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) q(k, j) -= (f * e[k] + g * d[k]);
        d[j] = q(i - 1, j);
        q(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    q(n - 1, i) = q(i, i);
    q(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = q(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += q(k, i + 1) * q(k, j);
        for (std::size_t k = 0; k <= i; ++k) q(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) q(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = q(n - 1, j);
    q(n - 1, j) = 0.0;
  }
  q(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
  // e[i] couples i-1 and i; shift to the e[i] ~ (i, i+1) convention.
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
}

template <class T>
double vec_norm(std::span<const T> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <class T>
std::vector<T> start_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::vector<T> v(n);
  for (auto& x : v) x = T{1.0 + jitter(rng)};
  const double nv = vec_norm<T>(v);
  for (auto& x : v) x /= nv;
  return v;
}

RealMatrix gram(const RealMatrix& a) {
  const std::size_t n = a.cols();
  RealMatrix g(n, n);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto ak = a.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = ak[i];
      if (aki == 0.0) continue;
      auto gi = g.row(i);
      for (std::size_t j = i; j < n; ++j) gi[j] += aki * ak[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

template <class T>
NormResult power_norm(const Matrix<T>& a, const NormOptions& opt) {
  NormResult result;
  if (a.max_abs() == 0.0) {
    result.fast_path = true;
    return result;
  }
  if (a.is_diagonal()) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, i)));
    result.value = m;
    result.fast_path = true;
    return result;
  }

  const std::size_t cap = opt.cap_factor * std::max(a.rows(), a.cols());
  std::vector<T> v = start_vector<T>(a.cols(), opt.seed);
  double rho_prev = 0.0;
  double delta_prev = 0.0;
  for (std::size_t it = 1; it <= cap; ++it) {
    const std::vector<T> av = multiply<T>(a, v);
    const std::vector<T> x = multiply_adjoint<T>(a, av);
    double rho = 0.0;
    for (const auto& y : av) rho += std::norm(y);
    const double nx = vec_norm<T>(x);
    if (nx == 0.0) break;

    double residual = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) residual += std::norm(x[k] - rho * v[k]);
    residual = std::sqrt(residual);
    for (std::size_t k = 0; k < x.size(); ++k) v[k] = x[k] / nx;

    // The Rayleigh quotient rises geometrically; extrapolate the remaining gap
    // from the last two increments.
    const double delta = std::abs(rho - rho_prev);
    bool converged = false;
    if (it >= 3) {
      if (delta == 0.0) {
        converged = true;
      } else if (delta_prev > 0.0) {
        const double q = std::min(delta / delta_prev, 0.999);
        const double remaining = delta * q / (1.0 - q);
        converged = remaining <= opt.tolerance * rho && delta <= opt.tolerance * rho;
      }
      converged = converged && residual <= 1e-6 * rho;
    }
    rho_prev = rho;
    delta_prev = delta;
    result.iterations = it;
    if (converged) {
      result.value = vec_norm<T>(multiply<T>(a, v));
      return result;
    }
  }
  result.used_fallback = true;
  return result;
}

}  // namespace

EigenDecomposition tridiag_eigh(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  RealMatrix w = RealMatrix::identity(std::max<std::size_t>(n, 1));
  auto values = solve_tridiagonal(diag, offdiag, &w);
  return {std::move(values), w.transpose()};
}

PartialEigenDecomposition tridiag_eigh_rows(std::span<const double> diag, std::span<const double> offdiag,
                                            std::span<const std::size_t> row_indices) {
  const std::size_t n = diag.size();
  require(!row_indices.empty(), "tridiag_eigh_rows: no rows requested");
  RealMatrix w(std::max<std::size_t>(n, 1), row_indices.size());
  for (std::size_t r = 0; r < row_indices.size(); ++r) {
    require(row_indices[r] < n, "tridiag_eigh_rows: row index out of range");
    w(row_indices[r], r) = 1.0;
  }
  auto values = solve_tridiagonal(diag, offdiag, &w);
  return {std::move(values), {row_indices.begin(), row_indices.end()}, w.transpose()};
}

std::vector<double> tridiag_eigvals(std::span<const double> diag, std::span<const double> offdiag) {
  return solve_tridiagonal(diag, offdiag, nullptr);
}

EigenDecomposition symmetric_eigh(const RealMatrix& a) {
  require(a.is_square(), "symmetric_eigh: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 1) return {{a(0, 0)}, RealMatrix::identity(1)};
  RealMatrix q(n, n);
  std::vector<double> d, e;
  householder_tridiagonalize(a, q, d, e);
  RealMatrix w = q.transpose();
  std::vector<double> off(e.begin(), e.end() - 1);
  auto values = solve_tridiagonal(d, off, &w);
  return {std::move(values), w.transpose()};
}

const NormOptions& default_norm_options() {
  static const NormOptions options = [] {
    NormOptions o;
    o.seed = kDefaultSeed;
    if (const char* env = std::getenv("LAB_SEED"); env && *env) {
      char* end = nullptr;
      const unsigned long long s = std::strtoull(env, &end, 10);
      if (end && *end == '\0') o.seed = s;
    }
    return o;
  }();
  return options;
}

double operator_norm_dense(const RealMatrix& a) {
  const RealMatrix g = a.rows() >= a.cols() ? gram(a) : gram(a.transpose());
  if (g.rows() == 1) return std::sqrt(std::max(g(0, 0), 0.0));
  RealMatrix q(g.rows(), g.cols());
  std::vector<double> d, e;
  householder_tridiagonalize(g, q, d, e);
  std::vector<double> off(e.begin(), e.end() - 1);
  const auto values = tridiag_eigvals(d, off);
  return std::sqrt(std::max(values.back(), 0.0));
}

RealMatrix realify(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RealMatrix r(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = a(i, j);
      r(i, j) = z.real();
      r(i, j + n) = -z.imag();
      r(i + m, j) = z.imag();
      r(i + m, j + n) = z.real();
    }
  }
  return r;
}

NormResult operator_norm_detailed(const RealMatrix& a, const NormOptions& options) {
  NormResult r = power_norm(a, options);
  if (r.used_fallback) r.value = operator_norm_dense(a);
  return r;
}

NormResult operator_norm_detailed(const ComplexMatrix& a, const NormOptions& options) {
  NormResult r = power_norm(a, options);
  if (r.used_fallback) r.value = operator_norm_dense(realify(a));
  return r;
}

double operator_norm(const RealMatrix& a) { return operator_norm_detailed(a).value; }
double operator_norm(const ComplexMatrix& a) { return operator_norm_detailed(a).value; }

namespace {

template <class T>
Matrix<T> commutator_impl(const Matrix<T>& a, const Matrix<T>& b) {
  require(a.is_square() && b.is_square() && a.rows() == b.rows(), "commutator: operands must be square and equal size");
  const std::size_t n = a.rows();
  if (b.is_diagonal()) {
    Matrix<T> c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = a(i, j) * b(j, j) - b(i, i) * a(i, j);
    return c;
  }
  if (a.is_diagonal()) {
    Matrix<T> c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = a(i, i) * b(i, j) - b(i, j) * a(j, j);
    return c;
  }
  return multiply(a, b) - multiply(b, a);
}

template <class T>
bool hermitian_impl(const Matrix<T>& a, double tol) {
  if (!a.is_square()) return false;
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (std::abs(a(i, j) - conj_of(a(j, i))) > tol * scale) return false;
  return true;
}

template <class T>
double anti_hermitian_impl(const Matrix<T>& a) {
  require(a.is_square(), "anti_hermitian_defect: matrix must be square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) m = std::max(m, std::abs(a(i, j) + conj_of(a(j, i))));
  return m;
}

}  // namespace

RealMatrix commutator(const RealMatrix& a, const RealMatrix& b) { return commutator_impl(a, b); }
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return commutator_impl(a, b); }

bool is_hermitian(const RealMatrix& a, double tol) { return hermitian_impl(a, tol); }
bool is_hermitian(const ComplexMatrix& a, double tol) { return hermitian_impl(a, tol); }

double anti_hermitian_defect(const RealMatrix& a) { return anti_hermitian_impl(a); }
double anti_hermitian_defect(const ComplexMatrix& a) { return anti_hermitian_impl(a); }

}  // namespace splab::linalg
