// splab: command-line front end for the commutator lab.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "splab/errors.hpp"
#include "splab/lab.hpp"

namespace {

enum Exit { kOk = 0, kContract = 1, kIo = 2, kValidation = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace splab;
  CLI::App app{"Numerical lab for commutators of spectral projections"};
  app.require_subcommand(1);

  // norms
  lab::SweepSpec spec;
  std::string family = "su2";
  std::string config;
  std::size_t sweep_N = 0;
  auto* norms = app.add_subcommand("norms", "Operator norms over a parameter sweep (CSV)");
  norms->add_option("--family", family, "su2 | su2_interval | su2_caps | ring | heisenberg | se2");
  norms->add_option("--n-start", spec.n_start);
  norms->add_option("--n-stop", spec.n_stop);
  norms->add_option("--n-step", spec.n_step);
  norms->add_option("--a", spec.a, "threshold(s) a in [0,1)")->delimiter(',');
  norms->add_option("--b", spec.b, "interval end(s) b in (0,1]")->delimiter(',');
  auto* n_opt = norms->add_option("--N", sweep_N, "ring: size of the extracted block (sets the mode window)");
  norms->add_option("--out", spec.out, "output CSV path, '-' for stdout");
  norms->add_option("--jobs", spec.jobs, "worker threads");
  norms->add_option("--config", config, "JSON config (schema_version 1); flags override it");
  norms->add_flag("--timings", spec.timings, "write measured wall_ms into the CSV");

  // hankel
  std::vector<std::size_t> hankel_N{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
  double hankel_a = 0.0;
  std::string hankel_out = "-";
  auto* hank = app.add_subcommand("hankel", "Truncated Hankel norms with Nehari/Power certificates");
  hank->add_option("--N", hankel_N, "truncation sizes")->delimiter(',');
  hank->add_option("--a", hankel_a, "arc parameter a in [0,1)");
  hank->add_option("--out", hankel_out);

  // regress
  std::string regress_csv;
  int mod4 = -1;
  std::string regress_out = "-";
  auto* reg = app.add_subcommand("regress", "Least squares of ln(1/2 - norm) against ln n");
  reg->add_option("--csv", regress_csv, "norms CSV")->required();
  reg->add_option("--mod4", mod4, "keep only n = r mod 4");
  reg->add_option("--out", regress_out);

  // vectors
  std::string vec_family = "su2";
  std::size_t vec_n = 101;
  double vec_a = 0.0, vec_b = 1.0;
  std::string vec_out = "-", vec_svg;
  auto* vec = app.add_subcommand("vectors", "Extremal eigenvectors of iC (coefficient CSV, optional SVG)");
  vec->add_option("--family", vec_family, "su2 | su2_interval | su2_caps | heisenberg");
  vec->add_option("--n", vec_n);
  vec->add_option("--a", vec_a);
  vec->add_option("--b", vec_b);
  vec->add_option("--out", vec_out);
  vec->add_option("--svg", vec_svg, "also write an SVG bar plot of |coefficients|");

  // validate
  std::string val_out = "-";
  bool inject = false;
  auto* val = app.add_subcommand("validate", "Run the invariant suites; JSON report, exit 3 on failure");
  val->add_option("--out", val_out);
  val->add_flag("--inject-sign-flip", inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kContract;
  }

  try {
    if (*norms) {
      lab::SweepSpec merged;
      if (!config.empty()) lab::apply_config_file(config, merged);
      // explicit flags win over the config file
      if (norms->count("--family") || config.empty()) merged.family = models::parse_family(family);
      if (norms->count("--n-start") || config.empty()) merged.n_start = spec.n_start;
      if (norms->count("--n-stop") || config.empty()) merged.n_stop = spec.n_stop;
      if (norms->count("--n-step") || config.empty()) merged.n_step = spec.n_step;
      if (norms->count("--a") || config.empty()) merged.a = spec.a;
      if (norms->count("--b") || config.empty()) merged.b = spec.b;
      if (n_opt->count()) merged.N = sweep_N;
      if (norms->count("--out") || config.empty()) merged.out = spec.out;
      if (norms->count("--jobs") || config.empty()) merged.jobs = spec.jobs;
      if (spec.timings) merged.timings = true;
      if (!norms->count("--b") && merged.family != models::Family::su2 && merged.family != models::Family::su2_interval &&
          merged.b.size() != 1)
        merged.b = {1.0};
      const auto rows = lab::run_sweep(merged);
      lab::write_norms(merged.out, rows, merged.timings);
    } else if (*hank) {
      lab::write_text(hankel_out, lab::hankel_csv(lab::hankel_table(hankel_N, hankel_a)));
    } else if (*reg) {
      std::optional<int> filter;
      if (mod4 >= 0) filter = mod4;
      const auto result = lab::regress(lab::read_norms_csv(regress_csv), filter);
      lab::write_text(regress_out, lab::regression_json(result));
    } else if (*vec) {
      const auto fam = models::parse_family(vec_family);
      const auto v = lab::extremal_vectors(fam, vec_n, vec_a, vec_b);
      lab::write_text(vec_out, lab::vectors_csv(v));
      if (!vec_svg.empty())
        lab::write_text(vec_svg, lab::vectors_svg(v, vec_family + " n=" + std::to_string(vec_n) + " |coefficients| (bars: max, line: min)"));
    } else if (*val) {
      lab::ValidateOptions opt;
      opt.inject_sign_flip = inject;
      const auto suites = lab::run_validation(opt);
      lab::write_text(val_out, lab::validation_json(suites));
      for (const auto& s : suites)
        if (!s.passed) {
          std::cerr << "validation failed: " << s.name << " residual " << s.residual << " > " << s.tolerance << "\n";
          return kValidation;
        }
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  }
  return kOk;
}
