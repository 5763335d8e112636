#include "evospec/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace evospec {

MaterialLaw RunConfig::make_law() const {
  const auto op = make_operator();
  const Eigen::Index mt = op->theta_components();
  const Eigen::Index m = op->components();
  if (law_kind == "heat") return heat_law(mt, m - mt);
  // rational_diag: M(z) = diag(a0 .. , b0 ..) + z^{-1} diag(a1 .., b1 ..)
  Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    m0(i, i) = i < mt ? law_a0 : law_b0;
    m1(i, i) = i < mt ? law_a1 : law_b1;
  }
  return MaterialLaw::rational_block(std::move(m0), std::move(m1));
}

std::shared_ptr<const SpatialOperator> RunConfig::make_operator() const {
  return SpatialOperator::make(instance, pairs);
}

TimeGrid RunConfig::make_grid() const {
  return TimeGrid(window, samples, nu, eps_wrap);
}

TimeProfile RunConfig::make_time_profile() const {
  return make_profile(profile, t0, t1);
}

ForcingSpec RunConfig::make_forcing_spec() const {
  ForcingSpec spec;
  spec.pairs = excite_pairs;
  spec.kernel = excite_kernel;
  spec.decay = decay;
  spec.amplitude = amplitude;
  spec.seed = seed;
  spec.profile = make_time_profile();
  return spec;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config: " + key + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      fail(where.empty() ? item.key() : where + "." + item.key(),
           "unknown key");
    }
  }
}

template <class T>
void read_into(const json& j, const std::string& where, const char* key,
               T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + "." + key, "wrong type");
  }
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig cfg;
  check_keys(j, "",
             {"schema_version", "problem", "forcing", "converge", "oracle"});
  if (!j.contains("schema_version")) fail("schema_version", "missing");
  read_into(j, "", "schema_version", cfg.schema_version);
  if (cfg.schema_version != 1) fail("schema_version", "unsupported version");

  if (j.contains("problem")) {
    const json& p = j.at("problem");
    check_keys(p, "problem",
               {"instance", "law", "nu", "window", "samples", "eps_wrap",
                "pairs", "kernel"});
    read_into(p, "problem", "instance", cfg.instance);
    read_into(p, "problem", "nu", cfg.nu);
    read_into(p, "problem", "window", cfg.window);
    read_into(p, "problem", "samples", cfg.samples);
    read_into(p, "problem", "eps_wrap", cfg.eps_wrap);
    read_into(p, "problem", "pairs", cfg.pairs);
    read_into(p, "problem", "kernel", cfg.kernel);
    if (p.contains("law")) {
      const json& l = p.at("law");
      check_keys(l, "problem.law", {"kind", "a0", "a1", "b0", "b1"});
      read_into(l, "problem.law", "kind", cfg.law_kind);
      read_into(l, "problem.law", "a0", cfg.law_a0);
      read_into(l, "problem.law", "a1", cfg.law_a1);
      read_into(l, "problem.law", "b0", cfg.law_b0);
      read_into(l, "problem.law", "b1", cfg.law_b1);
      if (cfg.law_kind != "heat" && cfg.law_kind != "rational_diag") {
        fail("problem.law.kind", "must be 'heat' or 'rational_diag'");
      }
    }
  }

  if (j.contains("forcing")) {
    const json& f = j.at("forcing");
    check_keys(f, "forcing",
               {"profile", "t0", "t1", "pairs", "kernel", "decay", "amplitude",
                "seed"});
    read_into(f, "forcing", "profile", cfg.profile);
    read_into(f, "forcing", "t0", cfg.t0);
    read_into(f, "forcing", "t1", cfg.t1);
    read_into(f, "forcing", "pairs", cfg.excite_pairs);
    read_into(f, "forcing", "kernel", cfg.excite_kernel);
    read_into(f, "forcing", "decay", cfg.decay);
    read_into(f, "forcing", "amplitude", cfg.amplitude);
    read_into(f, "forcing", "seed", cfg.seed);
  }

  if (j.contains("converge")) {
    const json& c = j.at("converge");
    check_keys(c, "converge", {"pair_counts"});
    read_into(c, "converge", "pair_counts", cfg.pair_counts);
    if (cfg.pair_counts.empty()) fail("converge.pair_counts", "empty list");
  }

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    check_keys(o, "oracle", {"instances", "max_dim", "c", "d", "seed"});
    read_into(o, "oracle", "instances", cfg.oracle_instances);
    long max_dim = static_cast<long>(cfg.oracle_max_dim);
    read_into(o, "oracle", "max_dim", max_dim);
    cfg.oracle_max_dim = static_cast<Eigen::Index>(max_dim);
    read_into(o, "oracle", "c", cfg.oracle_c);
    read_into(o, "oracle", "d", cfg.oracle_d);
    read_into(o, "oracle", "seed", cfg.oracle_seed);
  }

  // value sanity, with the offending key in the message
  if (cfg.instance != "mixed_bc_1d" && cfg.instance != "periodic_1d" &&
      cfg.instance != "dirichlet_square_2d") {
    fail("problem.instance", "unknown instance '" + cfg.instance + "'");
  }
  if (!(cfg.nu > 0.0)) fail("problem.nu", "must be positive");
  if (!(cfg.window > 0.0)) fail("problem.window", "must be positive");
  if (cfg.samples < 2 || (cfg.samples & (cfg.samples - 1)) != 0) {
    fail("problem.samples", "must be a power of two >= 2");
  }
  if (!(cfg.eps_wrap > 0.0 && cfg.eps_wrap < 1.0)) {
    fail("problem.eps_wrap", "must lie in (0, 1)");
  }
  if (cfg.pairs < 1) fail("problem.pairs", "must be >= 1");
  if (!(cfg.t1 > cfg.t0)) fail("forcing.t1", "must exceed forcing.t0");
  if (cfg.excite_pairs + cfg.excite_kernel == 0) {
    fail("forcing.pairs", "nothing excited");
  }
  if (cfg.excite_pairs > cfg.pairs) {
    fail("forcing.pairs", "exceeds problem.pairs");
  }
  for (std::size_t n : cfg.pair_counts) {
    if (n < 1 || n > cfg.pairs) {
      fail("converge.pair_counts", "entry out of range");
    }
  }
  if (cfg.oracle_instances < 1) fail("oracle.instances", "must be >= 1");
  if (cfg.oracle_max_dim < 4) fail("oracle.max_dim", "must be >= 4");
  if (!(cfg.oracle_c > 0.0)) fail("oracle.c", "must be positive");
  if (!(cfg.oracle_d >= cfg.oracle_c)) fail("oracle.d", "must be >= oracle.c");
  return cfg;
}

}  // namespace evospec
