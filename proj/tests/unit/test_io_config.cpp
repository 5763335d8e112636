#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "evospec/config.hpp"
#include "evospec/io.hpp"
#include "evospec/rng.hpp"

using namespace evospec;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
  const fs::path dir = fs::temp_directory_path() / "evospec_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path write_text(const fs::path& dir, const char* name,
                    const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("g17 formatting round-trips doubles bit for bit") {
  for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-300, -2.5e17, 0.0,
                   1.0, -0.0}) {
    const std::string s = format_g17(v);
    char* end = nullptr;
    const double back = std::strtod(s.c_str(), &end);
    CHECK(*end == '\0');
    CHECK(back == v);
  }
}

TEST_CASE("atomic writes leave only the final file") {
  const fs::path dir = fresh_dir("atomic");
  const fs::path target = dir / "nested" / "report.txt";
  atomic_write_text(target, "payload\n");
  CHECK(slurp(target) == "payload\n");
  CHECK(!fs::exists(target.string() + ".tmp"));

  // overwrite in place
  atomic_write_text(target, "second\n");
  CHECK(slurp(target) == "second\n");
}

TEST_CASE("signal csv round-trips bit for bit") {
  const fs::path dir = fresh_dir("signal_csv");
  const TimeGrid grid(8.0, 64, 3.0);
  Rng rng(31);
  Eigen::MatrixXcd values(3, 64);
  for (Eigen::Index k = 0; k < 64; ++k) {
    for (Eigen::Index c = 0; c < 3; ++c) values(c, k) = rng.normal_complex();
  }
  const WeightedSignal f(grid, values);

  const fs::path p = dir / "signal.csv";
  write_signal_csv(p, f);
  const std::string text = slurp(p);
  CHECK(text.rfind("t, re(c_1), im(c_1), re(c_2), im(c_2), re(c_3), im(c_3)\n",
                   0) == 0);

  const WeightedSignal back = read_signal_csv(p, 3.0, 1e-8);
  CHECK(back.grid() == grid);
  REQUIRE(back.dim() == 3);
  CHECK((back.values() - values).norm() == 0.0);
}

TEST_CASE("signal csv readers reject malformed files") {
  const fs::path dir = fresh_dir("bad_csv");
  CHECK_THROWS_AS(read_signal_csv(dir / "missing.csv", 1.0, 1e-3),
                  std::runtime_error);

  const fs::path empty = write_text(dir, "empty.csv", "");
  CHECK_THROWS_AS(read_signal_csv(empty, 1.0, 1e-3), std::runtime_error);

  const fs::path ragged = write_text(
      dir, "ragged.csv", "t, re(c_1), im(c_1)\n0,1,2\n1,1\n");
  CHECK_THROWS_AS(read_signal_csv(ragged, 1.0, 1e-3), std::runtime_error);

  const fs::path even = write_text(
      dir, "even.csv", "t, re(c_1), im(c_1)\n0,1,2,3\n1,1,2,3\n");
  CHECK_THROWS_AS(read_signal_csv(even, 1.0, 1e-3), std::runtime_error);

  const fs::path single = write_text(dir, "single.csv",
                                     "t, re(c_1), im(c_1)\n0,1,2\n");
  CHECK_THROWS_AS(read_signal_csv(single, 1.0, 1e-3), std::runtime_error);
}

TEST_CASE("convergence csv has one row per section") {
  const fs::path dir = fresh_dir("conv_csv");
  ConvergenceTable table;
  // dyadic values so the g17 text is the plain literal
  table.rows.push_back({4, 0.5, 0.75, 0.125, 0.0625, 1.0, 0.875, true});
  table.rows.push_back({8, 0.25, 0.5, 0.0625, 0.03125, 0.625, 0.5625, false});
  const fs::path p = dir / "convergence.csv";
  write_convergence_csv(p, table);

  const std::string text = slurp(p);
  CHECK(text.rfind("n,err_H,err_graph,g_n,h_n,bound_graph,bound_H,pass\n",
                   0) == 0);
  CHECK(text.find("\n4,0.5,0.75,0.125,0.0625,1,0.875,1\n") !=
        std::string::npos);
  CHECK(text.find("\n8,0.25,0.5,0.0625,0.03125,0.625,0.5625,0\n") !=
        std::string::npos);
}

TEST_CASE("report json carries the status fields") {
  CoercivityReport report;
  report.c_estimate = 0.5;
  report.d_max = 2.0;
  report.nu = 1.0;
  report.num_samples = 64;
  nlohmann::json j = coercivity_json(report);
  CHECK(j.at("status") == "coercive");
  report.c_estimate = 0.0;
  CHECK(coercivity_json(report).at("status") == "not_coercive");

  const auto op = SpatialOperator::periodic_1d(4);
  const GalerkinScheme scheme = build_scheme(op, 3, 2);
  const nlohmann::json s = scheme_json(scheme);
  CHECK(s.at("instance") == "periodic_1d");
  CHECK(s.at("dim") == 8);
  CHECK(s.at("kernel") == 2);
  CHECK(s.at("pairs") == 3);
  CHECK(s.at("pair_complete") == true);
  CHECK(s.at("components") == 2);
}

TEST_CASE("config loading applies defaults and checks everything") {
  const fs::path dir = fresh_dir("config");

  SUBCASE("minimal file keeps the defaults") {
    const fs::path p = write_text(dir, "min.json", "{\"schema_version\": 1}");
    const RunConfig cfg = load_config(p);
    CHECK(cfg.instance == "mixed_bc_1d");
    CHECK(cfg.samples == 1024);
    CHECK(cfg.pair_counts == std::vector<std::size_t>{4, 8, 16, 32});
  }

  SUBCASE("full file lands in every field") {
    const fs::path p = write_text(dir, "full.json", R"({
      "schema_version": 1,
      "problem": {
        "instance": "periodic_1d",
        "law": {"kind": "rational_diag", "a0": 2.0, "a1": 0.5,
                 "b0": 0.25, "b1": 1.5},
        "nu": 2.0, "window": 16.0, "samples": 256, "eps_wrap": 1e-6,
        "pairs": 12, "kernel": 2
      },
      "forcing": {
        "profile": "bump", "t0": 2.0, "t1": 5.0, "pairs": 6, "kernel": 1,
        "decay": 0.5, "amplitude": 2.0, "seed": 42
      },
      "converge": {"pair_counts": [2, 4, 8]},
      "oracle": {"instances": 5, "max_dim": 12, "c": 0.3, "d": 1.5,
                  "seed": 7}
    })");
    const RunConfig cfg = load_config(p);
    CHECK(cfg.instance == "periodic_1d");
    CHECK(cfg.law_kind == "rational_diag");
    CHECK(cfg.law_a1 == 0.5);
    CHECK(cfg.nu == 2.0);
    CHECK(cfg.samples == 256);
    CHECK(cfg.kernel == 2);
    CHECK(cfg.profile == "bump");
    CHECK(cfg.excite_pairs == 6);
    CHECK(cfg.excite_kernel == 1);
    CHECK(cfg.seed == 42);
    CHECK(cfg.pair_counts == std::vector<std::size_t>{2, 4, 8});
    CHECK(cfg.oracle_instances == 5);
    CHECK(cfg.oracle_max_dim == 12);
    CHECK(cfg.oracle_c == 0.3);

    const TimeGrid grid = cfg.make_grid();
    CHECK(grid.samples() == 256);
    const MaterialLaw law = cfg.make_law();
    CHECK(law.m0()(0, 0) == Complex(2.0, 0.0));
    CHECK(law.m1()(1, 1) == Complex(1.5, 0.0));
  }

  SUBCASE("unknown keys are named in the error") {
    const fs::path p = write_text(
        dir, "typo.json",
        "{\"schema_version\": 1, \"problem\": {\"samlpes\": 64}}");
    CHECK_THROWS_WITH_AS(load_config(p),
                         "config: problem.samlpes: unknown key", ConfigError);
  }

  SUBCASE("wrong types are named in the error") {
    const fs::path p = write_text(
        dir, "type.json",
        "{\"schema_version\": 1, \"problem\": {\"samples\": \"many\"}}");
    CHECK_THROWS_WITH_AS(load_config(p), "config: problem.samples: wrong type",
                         ConfigError);
  }

  SUBCASE("value checks fire") {
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v1.json",
                               "{\"schema_version\": 1, \"problem\": "
                               "{\"samples\": 100}}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v2.json",
                               "{\"schema_version\": 1, \"forcing\": "
                               "{\"t0\": 3.0, \"t1\": 2.0}}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v3.json",
                               "{\"schema_version\": 1, \"problem\": "
                               "{\"pairs\": 4}, \"converge\": "
                               "{\"pair_counts\": [2, 8]}}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v4.json",
                               "{\"schema_version\": 1, \"problem\": "
                               "{\"instance\": \"cube_3d\"}}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v5.json", "{\"schema_version\": 2}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v6.json", "{}")), ConfigError);
    CHECK_THROWS_AS(
        load_config(write_text(dir, "v7.json", "not json")), ConfigError);
    CHECK_THROWS_AS(load_config(dir / "absent.json"), ConfigError);
  }
}
