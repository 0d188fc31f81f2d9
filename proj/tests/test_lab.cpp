#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splab/lab.hpp"

using namespace splab;
using namespace splab::lab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "splab_test_lab";
  fs::create_directories(dir);
  return dir / name;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n') + 1); }

}  // namespace

TEST_CASE("norms CSV schema") {
  SweepSpec spec;
  spec.n_start = 2;
  spec.n_stop = 12;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 11);
  const std::string csv = norms_csv(rows, false);
  CHECK(first_line(csv) == slurp(std::string(SPLAB_GOLDEN_DIR) + "/norms_header.csv"));
  CHECK(csv.find('\r') == std::string::npos);
  for (const auto& r : rows) {
    CHECK(r.family == "su2");
    if (r.n % 4 == 2) CHECK(std::abs(r.norm - 0.5) <= 1e-10);
  }
  CHECK(csv.find("su2,3,0,1,0.43301270189221941,3,0\n") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("heisenberg sweep shows the same ladder") {
  SweepSpec spec;
  spec.family = models::Family::heisenberg;
  spec.n_start = 2;
  spec.n_stop = 12;
  for (const auto& r : run_sweep(spec))
    if (r.n % 4 == 2) CHECK(std::abs(r.norm - 0.5) <= 1e-10);
}

TEST_CASE("byte-identical reruns and sidecar timings") {
  SweepSpec spec;
  spec.n_start = 2;
  spec.n_stop = 30;
  const auto p1 = scratch("a.csv"), p2 = scratch("b.csv");
  write_norms(p1.string(), run_sweep(spec), false);
  write_norms(p2.string(), run_sweep(spec), false);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(fs::exists(p1.string() + ".meta.json"));
  const auto back = read_norms_csv(p1.string());
  CHECK(back.size() == 29);
  CHECK(back[1].norm == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-15));
}

TEST_CASE("parallel sweep equals serial sweep") {
  SweepSpec spec;
  spec.family = models::Family::su2_interval;
  spec.n_start = 5;
  spec.n_stop = 40;
  spec.n_step = 5;
  spec.a = {0.3, 0.0};
  spec.b = {1.0, 0.5};
  const auto serial = norms_csv(run_sweep(spec), false);
  spec.jobs = 4;
  CHECK(norms_csv(run_sweep(spec), false) == serial);
  // canonical order: n, then a, then b
  const auto rows = run_sweep(spec);
  CHECK(rows[0].a == 0.0);
  CHECK(rows[0].b == 0.5);
  CHECK(rows[3].a == 0.3);
}

TEST_CASE("caps column ordering at n = 301") {
  SweepSpec spec;
  spec.family = models::Family::su2_caps;
  spec.n_start = spec.n_stop = 301;
  spec.a = {0.25, 0.75};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].norm < rows[0].norm);
}

TEST_CASE("spec validation") {
  SweepSpec bad;
  bad.n_start = 10;
  bad.n_stop = 5;
  CHECK_THROWS_AS(run_sweep(bad), ContractError);
  SweepSpec su2_a;
  su2_a.a = {0.3};
  CHECK_THROWS_AS(run_sweep(su2_a), ContractError);
  SweepSpec big;
  big.n_stop = kMaxSweepN + 1;
  CHECK_THROWS_AS(run_sweep(big), ContractError);
  SweepSpec ring_b;
  ring_b.family = models::Family::ring;
  ring_b.b = {0.2, 0.3};
  CHECK_THROWS_AS(run_sweep(ring_b), ContractError);
}

TEST_CASE("unwritable output raises an I/O error naming the path") {
  try {
    write_text("/nonexistent-dir/x.csv", "x");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

TEST_CASE("config file") {
  const auto p = scratch("cfg.json");
  {
    std::ofstream(p) << R"({"schema_version": 1, "family": "ring", "n_start": 8, "n_stop": 16, "n_step": 4, "N": 1, "jobs": 2})";
  }
  SweepSpec spec;
  apply_config_file(p.string(), spec);
  CHECK(spec.family == models::Family::ring);
  CHECK(spec.n_start == 8);
  CHECK(spec.N == std::size_t{1});
  spec.b = {1.0};
  CHECK(run_sweep(spec).size() == 3);
  {
    std::ofstream(p) << R"({"schema_version": 7})";
  }
  CHECK_THROWS_AS(apply_config_file(p.string(), spec), ContractError);
  CHECK_THROWS_AS(apply_config_file(scratch("missing.json").string(), spec), IoError);
}

TEST_CASE("regression") {
  SweepSpec spec;
  spec.n_start = 2;
  spec.n_stop = 200;
  const auto rows = run_sweep(spec);
  const auto ladder = regress(rows, 2);
  CHECK(ladder.degenerate);
  CHECK(ladder.exact_half_rows == 50);
  const auto zero = regress(rows, 0);
  CHECK_FALSE(zero.degenerate);
  CHECK(zero.fit.slope < 0);
  CHECK(zero.fit.r2 >= 0);
  CHECK(zero.fit.r2 <= 1);
  CHECK(regression_json(ladder).find("degenerate: exact half") != std::string::npos);

  std::vector<SweepRow> two{{"su2", 4, 0, 1, 0.25, 0}, {"su2", 16, 0, 1, 0.375, 0}};
  const auto fit = regress(two, std::nullopt);
  CHECK(fit.fit.r2 == 1.0);
  CHECK(fit.fit.points_used == 2);
  CHECK(fit.fit.slope == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(regress({two[0]}, std::nullopt), ContractError);
}

TEST_CASE("hankel table") {
  const auto rows = hankel_table({1, 2, 4, 8, 16}, 0.0);
  const std::string csv = hankel_csv(rows);
  CHECK(first_line(csv) == slurp(std::string(SPLAB_GOLDEN_DIR) + "/hankel_header.csv"));
  CHECK(csv.find("1,0,0.31830988618379069,0.5,0.5\n") != std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].norm >= rows[i - 1].norm);
  CHECK(rows.back().norm <= rows.back().nehari);
}

TEST_CASE("validate: clean run passes, sign flip fails the cross-path suite only") {
  const auto clean = run_validation();
  for (const auto& s : clean) CHECK_MESSAGE(s.passed, s.name);
  CHECK(validation_json(clean).find("\"all_passed\": true") != std::string::npos);
  ValidateOptions opt;
  opt.inject_sign_flip = true;
  const auto mutated = run_validation(opt);
  for (const auto& s : mutated) CHECK(s.passed == (s.name != "spinrep.wigner_d_cross_path"));
  CHECK(validation_json(mutated).find("\"all_passed\": false") != std::string::npos);
}

TEST_CASE("vectors export") {
  const auto v = extremal_vectors(models::Family::su2, 101, 0.0, 1.0);
  double l2 = 0, best = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < v.max.coefficients.size(); ++i) {
    const double m = std::abs(v.max.coefficients[i]);
    l2 += m * m;
    if (m > best) best = m, arg = i;
  }
  CHECK(std::abs(l2 - 1) <= 1e-12);
  CHECK(arg > 5);
  CHECK(arg < 95);
  CHECK(vectors_csv(v) == vectors_csv(extremal_vectors(models::Family::su2, 101, 0.0, 1.0)));
  CHECK(v.labels.front() == "50");
  const auto svg = vectors_svg(v, "t");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK_THROWS_AS(extremal_vectors(models::Family::ring, 10, 0, 1), ContractError);
}
