#include "splab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "splab/errors.hpp"
#include "splab/hankel.hpp"
#include "splab/linalg.hpp"
#include "splab/specfun.hpp"
#include "splab/spinrep.hpp"

namespace splab::lab {
namespace {

using json = nlohmann::json;
using models::Family;

bool family_uses_b(Family f) { return f == Family::su2 || f == Family::su2_interval; }

}  // namespace

void validate_spec(const SweepSpec& spec) {
  require(spec.n_step >= 1, "sweep: n_step must be positive");
  require(spec.n_start <= spec.n_stop, "sweep: empty n range");
  require(!spec.a.empty(), "sweep: empty a list");
  require(!spec.b.empty(), "sweep: empty b list");
  require(spec.jobs >= 1, "sweep: jobs must be positive");
  const std::size_t min_n = spec.family == Family::se2 ? 1 : 2;
  require(spec.n_start >= min_n, "sweep: n_start too small for family " + models::family_name(spec.family));
  require(spec.n_stop <= kMaxSweepN, "sweep: n_stop above the cap of " + std::to_string(kMaxSweepN));
  for (double a : spec.a) require(a >= 0.0 && a < 1.0, "sweep: a values must lie in [0, 1)");
  if (family_uses_b(spec.family)) {
    for (double b : spec.b) require(b > 0.0 && b <= 1.0, "sweep: b values must lie in (0, 1]");
  } else {
    require(spec.b.size() == 1, "sweep: family " + models::family_name(spec.family) + " takes no b values");
  }
  if (spec.family == Family::su2) {
    for (double a : spec.a) require(a == 0.0, "sweep: family su2 is a = 0, b = 1; use su2_interval");
    for (double b : spec.b) require(b == 1.0, "sweep: family su2 is a = 0, b = 1; use su2_interval");
  }
}

void apply_config_file(const std::string& path, SweepSpec& spec) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ContractError("config '" + path + "': " + e.what());
  }
  require(j.is_object(), "config: top level must be an object");
  require(j.value("schema_version", 0) == kConfigSchemaVersion,
          "config: schema_version must be " + std::to_string(kConfigSchemaVersion));
  try {
    if (j.contains("family")) spec.family = models::parse_family(j["family"].get<std::string>());
    if (j.contains("n_start")) spec.n_start = j["n_start"].get<std::size_t>();
    if (j.contains("n_stop")) spec.n_stop = j["n_stop"].get<std::size_t>();
    if (j.contains("n_step")) spec.n_step = j["n_step"].get<std::size_t>();
    if (j.contains("a")) spec.a = j["a"].get<std::vector<double>>();
    if (j.contains("b")) spec.b = j["b"].get<std::vector<double>>();
    if (j.contains("N")) spec.N = j["N"].get<std::size_t>();
    if (j.contains("jobs")) spec.jobs = j["jobs"].get<std::size_t>();
    if (j.contains("out")) spec.out = j["out"].get<std::string>();
    if (j.contains("timings")) spec.timings = j["timings"].get<bool>();
  } catch (const json::exception& e) {
    throw ContractError("config '" + path + "': " + e.what());
  }
}

double point_norm(Family family, std::size_t n, double a, double b, std::optional<std::size_t> N) {
  switch (family) {
    case Family::su2:
    case Family::su2_interval:
      return models::su2_commutator(n, a, b).norm;
    case Family::su2_caps:
      return models::su2_caps_commutator(n, a).norm;
    case Family::ring: {
      std::size_t K = n;
      if (N) K = static_cast<std::size_t>(std::max<long long>(4 * static_cast<long long>(*N) + 8,
                                                              models::boundary_index(n, a) + static_cast<long long>(*N)));
      return models::ring_commutator(n, K, a).norm;
    }
    case Family::heisenberg:
      return linalg::operator_norm(models::heisenberg_matrix(n, a));
    case Family::se2:
      return models::se2_commutator(n, a).norm;
  }
  return 0.0;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  std::vector<SweepRow> rows;
  const bool uses_b = family_uses_b(spec.family);
  for (std::size_t n = spec.n_start; n <= spec.n_stop; n += spec.n_step)
    for (double a : spec.a)
      for (double b : spec.b)
        rows.push_back({models::family_name(spec.family), n, a, uses_b ? b : (spec.family == Family::su2_caps ? a : 0.0), 0.0, 0.0});
  std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    return std::tie(x.n, x.a, x.b) < std::tie(y.n, y.a, y.b);
  });

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        rows[i].norm = point_norm(spec.family, rows[i].n, rows[i].a, rows[i].b, spec.N);
        rows[i].wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(spec.jobs, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string norms_csv(const std::vector<SweepRow>& rows, bool timings) {
  std::string s = std::string(kNormsHeader) + "\n";
  for (const auto& r : rows) {
    s += r.family + "," + std::to_string(r.n) + "," + format_double(r.a) + "," + format_double(r.b) + "," +
         format_double(r.norm) + "," + std::to_string(r.n % 4) + "," + format_double(timings ? r.wall_ms : 0.0) + "\n";
  }
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_norms(const std::string& path, const std::vector<SweepRow>& rows, bool timings) {
  write_text(path, norms_csv(rows, timings));
  if (path == "-") return;
  json meta;
  meta["schema_version"] = kConfigSchemaVersion;
  meta["written_at_unix"] = static_cast<long long>(std::time(nullptr));
  double total = 0.0;
  json t = json::array();
  for (const auto& r : rows) {
    t.push_back({{"n", r.n}, {"a", r.a}, {"b", r.b}, {"wall_ms", r.wall_ms}});
    total += r.wall_ms;
  }
  meta["rows"] = t;
  meta["total_wall_ms"] = total;
  write_text(path + ".meta.json", meta.dump(2) + "\n");
}

std::vector<SweepRow> read_norms_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kNormsHeader, "'" + path + "' does not start with the norms header");
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    require(f.size() == 7, path + ":" + std::to_string(lineno) + ": expected 7 fields");
    try {
      rows.push_back({f[0], std::stoul(f[1]), std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), std::stod(f[6])});
    } catch (const std::exception&) {
      throw ContractError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

RegressionOutcome regress(const std::vector<SweepRow>& rows, std::optional<int> mod4) {
  if (mod4) require(*mod4 >= 0 && *mod4 < 4, "regress: residue must be 0..3");
  RegressionOutcome out;
  std::vector<double> xs, ys;
  std::size_t filtered = 0;
  for (const auto& r : rows) {
    if (mod4 && static_cast<int>(r.n % 4) != *mod4) continue;
    ++filtered;
    const double gap = 0.5 - r.norm;
    if (gap <= 1e-10) {
      ++out.exact_half_rows;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(gap));
  }
  if (filtered > 0 && out.exact_half_rows == filtered) {
    out.degenerate = true;
    return out;
  }
  require(xs.size() >= 2, "regress: need at least 2 rows with norm < 1/2 after filtering");
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  require(sxx > 0, "regress: all rows share the same n");
  out.fit.slope = sxy / sxx;
  out.fit.intercept = my - out.fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (out.fit.intercept + out.fit.slope * xs[i]);
    ss_res += e * e;
  }
  out.fit.r2 = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  out.fit.points_used = xs.size();
  return out;
}

std::string regression_json(const RegressionOutcome& r) {
  json j;
  if (r.degenerate) {
    j["result"] = "degenerate: exact half";
    j["exact_half_rows"] = r.exact_half_rows;
  } else {
    j["result"] = "fit";
    j["slope"] = r.fit.slope;
    j["intercept"] = r.fit.intercept;
    j["r2"] = r.fit.r2;
    j["points_used"] = r.fit.points_used;
    j["exact_half_rows_skipped"] = r.exact_half_rows;
  }
  return j.dump(2) + "\n";
}

std::vector<HankelRow> hankel_table(const std::vector<std::size_t>& Ns, double a) {
  const hankel::ArcSymbol sym(a);
  std::vector<HankelRow> rows;
  for (std::size_t N : Ns) {
    require(N >= 1, "hankel: N must be at least 1");
    rows.push_back({N, a, hankel::truncated_norm(sym, N), hankel::nehari_bound(sym), hankel::power_essential_radius(sym)});
  }
  return rows;
}

std::string hankel_csv(const std::vector<HankelRow>& rows) {
  std::string s = std::string(kHankelHeader) + "\n";
  for (const auto& r : rows)
    s += std::to_string(r.N) + "," + format_double(r.a) + "," + format_double(r.norm) + "," + format_double(r.nehari) + "," +
         format_double(r.power) + "\n";
  return s;
}

// ---- validation suites ----

namespace {

SuiteResult suite(std::string name, double residual, double tolerance, std::string detail = {}) {
  return {std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)};
}

RealMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  RealMatrix m(r, c);
  for (auto& x : m.data()) x = g(rng);
  return m;
}

RealMatrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  RealMatrix a = random_matrix(rng, n, n);
  RealMatrix s = multiply(a.transpose(), a);
  return linalg::symmetric_eigh(s).eigenvectors;
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidateOptions& options) {
  std::vector<SuiteResult> out;
  std::mt19937_64 rng(linalg::default_norm_options().seed);

  {  // linalg: norm invariance
    double worst = 0.0;
    for (std::size_t t = 0; t < 6; ++t) {
      const RealMatrix a = random_matrix(rng, 5 + t, 7 + 2 * t);
      const double na = linalg::operator_norm(a);
      const double u = linalg::operator_norm(multiply(multiply(random_orthogonal(rng, a.rows()), a), random_orthogonal(rng, a.cols())));
      worst = std::max({worst, std::abs(linalg::operator_norm(a.transpose()) - na) / na,
                        std::abs(linalg::operator_norm(-a) - na) / na, std::abs(u - na) / na,
                        std::abs(linalg::operator_norm_dense(a) - na) / na});
    }
    out.push_back(suite("linalg.operator_norm_invariance", worst, 1e-10));
  }
  {  // linalg: reconstruction
    double worst = 0.0;
    for (std::size_t n : {2u, 7u, 40u}) {
      const auto ops = spinrep::build_spin_operators(spinrep::SpinRep(n));
      const auto e = linalg::tridiag_eigh(std::vector<double>(n, 0.0), ops.jx_offdiag());
      RealMatrix lam = RealMatrix::diagonal(e.eigenvalues);
      const RealMatrix rec = multiply(multiply(e.eigenvectors, lam), e.eigenvectors.transpose());
      worst = std::max(worst, max_abs_diff(rec, ops.jx) / std::max(1.0, linalg::operator_norm(ops.jx)));
    }
    out.push_back(suite("linalg.tridiag_reconstruction", worst, 1e-10));
  }
  {  // specfun: Bessel series vs integral
    double worst = 0.0;
    for (int p = 0; p <= 5; ++p)
      for (double x = 0.5; x <= 20.0; x += 0.5)
        worst = std::max(worst, std::abs(specfun::bessel_j_series(p, x) - specfun::bessel_j_integral(p, x)));
    out.push_back(suite("specfun.bessel_cross_representation", worst, 1e-9));
  }
  {  // specfun: Hilbert transform of J_p at 0
    double worst = 0.0;
    for (int p = -15; p <= 15; ++p)
      if (p != 0) worst = std::max(worst, std::abs(specfun::hilbert_bessel_at_zero(p) - specfun::hilbert_bessel_at_zero_quadrature(p)));
    out.push_back(suite("specfun.hilbert_bessel_quadrature", worst, 1e-8));
  }
  {  // spinrep: d(pi/2) eigen path vs explicit sum (mutation target)
    double worst = 0.0;
    spinrep::PiHalfOptions opt;
    opt.inject_sign_flip = options.inject_sign_flip;
    for (std::size_t n = 2; n <= 31; ++n) {
      const spinrep::SpinRep rep(n);
      worst = std::max(worst, max_abs_diff(spinrep::wigner_d_pi_half(rep, opt).entries,
                                           spinrep::wigner_d_matrix_sum(rep, std::numbers::pi / 2).entries));
    }
    out.push_back(suite("spinrep.wigner_d_cross_path", worst, 1e-8));
  }
  {  // spinrep: projection eigen path vs sum formula
    double worst = 0.0;
    for (std::size_t n = 2; n <= 31; ++n) {
      const spinrep::SpinRep rep(n);
      const auto d = spinrep::wigner_d_matrix_sum(rep, std::numbers::pi / 2);
      for (double a : {0.0, 0.3, 0.7})
        worst = std::max(worst, max_abs_diff(spinrep::projection_x(rep, a).entries, spinrep::projection_x_from_d(d, a).entries));
    }
    out.push_back(suite("spinrep.projection_cross_path", worst, 1e-8));
  }
  {  // spinrep: Hilbert-transform formula
    double worst = 0.0;
    for (std::size_t n = 2; n <= 31; ++n) worst = std::max(worst, spinrep::verify_hilbert_formula(spinrep::SpinRep(n)).max_residual);
    out.push_back(suite("spinrep.hilbert_formula", worst, 1e-9));
  }
  {  // spinrep: orthogonality of d(pi/2)
    double worst = 0.0;
    for (std::size_t n : {2u, 3u, 17u, 31u, 100u, 101u, 102u, 103u}) {
      const auto d = spinrep::wigner_d_pi_half(spinrep::SpinRep(n)).entries;
      worst = std::max(worst, max_abs_diff(multiply(d.transpose(), d), RealMatrix::identity(n)));
    }
    out.push_back(suite("spinrep.wigner_invariants", worst, 1e-10));
  }
  {  // hankel: certificates
    const hankel::ArcSymbol e(0.0);
    const double upper = hankel::nehari_bound(e), lower = hankel::power_essential_radius(e);
    const double t = hankel::truncated_norm(e, 256);
    const double res = std::abs(upper - 0.5) + std::abs(lower - 0.5) + std::max(0.0, t - upper);
    out.push_back(suite("hankel.certificate_sandwich", res, 0.0));
  }
  {  // models: exact half on n = 2 mod 4
    double worst = 0.0;
    for (std::size_t n = 2; n <= 102; n += 4) {
      worst = std::max(worst, std::abs(models::su2_commutator(n).norm - 0.5));
      worst = std::max(worst, std::abs(models::heisenberg_commutator(n, 0.0, 0).norm - 0.5));
    }
    out.push_back(suite("models.exact_half_ladder", worst, 1e-10));
  }
  {  // models: block antisymmetry of the su2 commutator
    double worst = 0.0;
    for (std::size_t n : {2u, 3u, 10u, 31u, 64u}) worst = std::max(worst, *models::su2_commutator(n).block_check);
    out.push_back(suite("models.su2_block_structure", worst, 1e-15));
  }
  {  // models: ring identity
    double worst = 0.0;
    for (auto [n, N] : {std::pair<std::size_t, std::size_t>{64, 15}, {101, 25}}) {
      const RealMatrix h = hankel::hankel_truncation(hankel::ArcSymbol(0.0), N);
      worst = std::max(worst, max_abs_diff(-models::ring_submatrix(n, N), h));
    }
    out.push_back(suite("models.ring_exact_identity", worst, 0.0));
  }
  {  // models: SE(2) blocks
    double worst = 0.0;
    for (std::size_t K : {8u, 64u}) worst = std::max(worst, *models::se2_commutator(K).block_check);
    out.push_back(suite("models.se2_block_identity", worst, 1e-12));
  }
  {  // models: Heisenberg closed form
    double worst = 0.0;
    for (std::size_t n : {2u, 7u, 16u, 33u}) worst = std::max(worst, *models::heisenberg_commutator(n).block_check);
    out.push_back(suite("models.heisenberg_closed_form", worst, 1e-12));
  }
  return out;
}

std::string validation_json(const std::vector<SuiteResult>& suites) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  bool all = true;
  json arr = json::array();
  for (const auto& s : suites) {
    all = all && s.passed;
    json e{{"name", s.name}, {"status", s.passed ? "pass" : "fail"}, {"residual", s.residual}, {"tolerance", s.tolerance}};
    if (!s.detail.empty()) e["detail"] = s.detail;
    arr.push_back(e);
  }
  j["suites"] = arr;
  j["all_passed"] = all;
  return j.dump(2) + "\n";
}

// ---- extremal vectors ----

VectorExport extremal_vectors(Family family, std::size_t n, double a, double b) {
  VectorExport v;
  switch (family) {
    case Family::su2:
    case Family::su2_interval: {
      const RealMatrix c = models::su2_commutator_matrix(n, a, b);
      v.max = models::extremal_vector(c, models::Extremal::max);
      v.min = models::extremal_vector(c, models::Extremal::min);
      break;
    }
    case Family::su2_caps: {
      const RealMatrix c = models::su2_caps_matrix(n, a);
      v.max = models::extremal_vector(c, models::Extremal::max);
      v.min = models::extremal_vector(c, models::Extremal::min);
      break;
    }
    case Family::heisenberg: {
      const ComplexMatrix c = models::heisenberg_matrix(n, a);
      v.max = models::extremal_vector(c, models::Extremal::max);
      v.min = models::extremal_vector(c, models::Extremal::min);
      break;
    }
    default:
      throw ContractError("vectors: family " + models::family_name(family) + " is not supported");
  }
  const bool spin = family != Family::heisenberg;
  for (std::size_t i = 0; i < n; ++i)
    v.labels.push_back(spin ? spinrep::SpinRep(n).weight(i).str() : std::to_string(i));
  return v;
}

std::string vectors_csv(const VectorExport& v) {
  std::string s = "which,index,label,re,im,modulus\n";
  for (const auto* w : {&v.max, &v.min}) {
    const char* which = w == &v.max ? "max" : "min";
    for (std::size_t i = 0; i < w->coefficients.size(); ++i) {
      const auto z = w->coefficients[i];
      s += std::string(which) + "," + std::to_string(i) + "," + v.labels[i] + "," + format_double(z.real()) + "," +
           format_double(z.imag()) + "," + format_double(std::abs(z)) + "\n";
    }
  }
  return s;
}

std::string vectors_svg(const VectorExport& v, const std::string& title) {
  const std::size_t n = v.max.coefficients.size();
  const double width = 800, height = 300, margin = 30;
  const double bw = (width - 2 * margin) / static_cast<double>(n);
  double top = 0;
  for (const auto* w : {&v.max, &v.min})
    for (auto z : w->coefficients) top = std::max(top, std::abs(z));
  if (top == 0) top = 1;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  o << "<text x=\"" << margin << "\" y=\"18\" font-size=\"14\">" << title << "</text>\n";
  o << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
    << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::abs(v.max.coefficients[i]) / top * (height - 2 * margin - 10);
    o << "<rect x=\"" << margin + i * bw << "\" y=\"" << height - margin - h << "\" width=\"" << std::max(bw * 0.9, 0.5)
      << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
  }
  o << "<polyline fill=\"none\" stroke=\"crimson\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::abs(v.min.coefficients[i]) / top * (height - 2 * margin - 10);
    o << margin + (i + 0.5) * bw << "," << height - margin - h << " ";
  }
  o << "\"/>\n</svg>\n";
  return o.str();
}

}  // namespace splab::lab
