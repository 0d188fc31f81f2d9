#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splab/models.hpp"

namespace splab::lab {

inline constexpr const char* kNormsHeader = "family,n,a,b,norm,n_mod_4,wall_ms";
inline constexpr const char* kHankelHeader = "N,a,norm,nehari_upper,power_lower";
inline constexpr int kConfigSchemaVersion = 1;
inline constexpr std::size_t kMaxSweepN = 2048;

struct SweepSpec {
  models::Family family = models::Family::su2;
  std::size_t n_start = 2;
  std::size_t n_stop = 12;
  std::size_t n_step = 1;
  std::vector<double> a{0.0};
  std::vector<double> b{1.0};
  std::optional<std::size_t> N;
  std::size_t jobs = 1;
  /// Write measured wall times into the CSV instead of 0.
  bool timings = false;
  std::string out = "-";
};

/// Throws ContractError when ranges are empty or parameters do not fit the family.
void validate_spec(const SweepSpec& spec);

/// Merges a JSON config (schema_version 1) into `spec`.
void apply_config_file(const std::string& path, SweepSpec& spec);

struct SweepRow {
  std::string family;
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  double norm = 0.0;
  double wall_ms = 0.0;
};

/// Norm of one parameter point.
double point_norm(models::Family family, std::size_t n, double a, double b, std::optional<std::size_t> N);

/// Evaluates every (n, a, b) point on `spec.jobs` workers; rows come back in
/// canonical (n, a, b) order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string format_double(double x);
std::string norms_csv(const std::vector<SweepRow>& rows, bool timings);
/// Writes the CSV (or stdout for "-") plus `<path>.meta.json` with the timings.
void write_norms(const std::string& path, const std::vector<SweepRow>& rows, bool timings);
std::vector<SweepRow> read_norms_csv(const std::string& path);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points_used = 0;
};

struct RegressionOutcome {
  /// Every filtered row sits at norm 1/2 (within 1e-10): nothing to fit.
  bool degenerate = false;
  std::size_t exact_half_rows = 0;
  RegressionResult fit;
};

/// Least squares of ln(1/2 - norm) against ln n, optionally on n = r mod 4 only.
RegressionOutcome regress(const std::vector<SweepRow>& rows, std::optional<int> mod4);
std::string regression_json(const RegressionOutcome& r);

struct HankelRow {
  std::size_t N = 0;
  double a = 0.0;
  double norm = 0.0;
  double nehari = 0.0;
  double power = 0.0;
};

std::vector<HankelRow> hankel_table(const std::vector<std::size_t>& Ns, double a);
std::string hankel_csv(const std::vector<HankelRow>& rows);

struct SuiteResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidateOptions {
  bool inject_sign_flip = false;
};

std::vector<SuiteResult> run_validation(const ValidateOptions& options = {});
std::string validation_json(const std::vector<SuiteResult>& suites);

struct VectorExport {
  std::vector<std::string> labels;  // weight m (su2) or grid index (heisenberg)
  models::ExtremalVector max;
  models::ExtremalVector min;
};

VectorExport extremal_vectors(models::Family family, std::size_t n, double a, double b);
std::string vectors_csv(const VectorExport& v);
std::string vectors_svg(const VectorExport& v, const std::string& title);

/// Writes text to a file (LF endings) or stdout for "-"; IoError names the path.
void write_text(const std::string& path, const std::string& text);

}  // namespace splab::lab
