#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evospec/forcing.hpp"

namespace evospec {

// Run description, loaded from json. schema_version gates compatibility;
// unknown keys are rejected so typos fail loudly instead of being ignored.
struct RunConfig {
  int schema_version = 1;

  // problem
  std::string instance = "mixed_bc_1d";
  std::string law_kind = "heat";  // "heat" or "rational_diag"
  double law_a0 = 1.0, law_a1 = 0.0;  // z alpha(z) = a0 z + a1 on theta
  double law_b0 = 0.0, law_b1 = 1.0;  // z beta(z)  = b0 z + b1 on q
  double nu = 1.0;
  double window = 24.0;
  std::size_t samples = 1024;
  double eps_wrap = 1e-8;
  std::size_t pairs = 64;    // catalog resolution
  std::size_t kernel = 0;    // kernel modes in the solving scheme

  // forcing
  std::string profile = "sin2";
  double t0 = 1.0, t1 = 2.0;
  std::size_t excite_pairs = 8;
  std::size_t excite_kernel = 0;
  double decay = 1.0;
  double amplitude = 1.0;
  std::uint64_t seed = 1;

  // converge
  std::vector<std::size_t> pair_counts = {4, 8, 16, 32};

  // oracle
  std::size_t oracle_instances = 20;
  Eigen::Index oracle_max_dim = 24;
  double oracle_c = 0.4;
  double oracle_d = 2.0;
  std::uint64_t oracle_seed = 11;

  MaterialLaw make_law() const;
  std::shared_ptr<const SpatialOperator> make_operator() const;
  TimeGrid make_grid() const;
  TimeProfile make_time_profile() const;
  ForcingSpec make_forcing_spec() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace evospec
