#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "evospec/config.hpp"

namespace evospec {

struct CliOptions {
  std::filesystem::path out = "out";
  std::optional<std::uint64_t> seed;  // overrides the seeds in the config
  int jobs = 0;
  bool force_dense = false;
};

// All commands write their artifacts under opts.out and return the process
// exit code: 0 when every check passed, 1 when a mathematical check failed.
// Configuration and i/o problems are reported by throwing; the frontend maps
// those to exit code 2.
int cmd_verify(const RunConfig& cfg, const CliOptions& opts);
int cmd_solve(const RunConfig& cfg, const CliOptions& opts);
int cmd_converge(const RunConfig& cfg, const CliOptions& opts);
int cmd_oracle(const RunConfig& cfg, const CliOptions& opts);

}  // namespace evospec
