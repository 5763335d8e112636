#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "evospec/commands.hpp"

namespace {

struct Args {
  std::string config;
  evospec::CliOptions opts;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config, "run configuration (json)")
      ->required();
  cmd->add_option("--out", args.opts.out, "output directory")
      ->default_val("out");
  cmd->add_option("--seed", args.seed, "override the seeds in the config")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--jobs", args.opts.jobs,
                  "worker threads, 0 = all hardware threads");
  cmd->add_flag("--dense", args.opts.force_dense,
                "force the dense reference sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectral solver for evolutionary problems on a weighted time window"};
  app.require_subcommand(1);

  Args args;
  CLI::App* verify =
      app.add_subcommand("verify", "check catalog, transform and symbol");
  CLI::App* solve = app.add_subcommand("solve", "solve one configured run");
  CLI::App* converge =
      app.add_subcommand("converge", "galerkin error study against bounds");
  CLI::App* oracle =
      app.add_subcommand("oracle", "dense resolvent convergence study");
  for (CLI::App* cmd : {verify, solve, converge, oracle}) {
    add_common(cmd, args);
  }

  CLI11_PARSE(app, argc, argv);
  if (args.seed_set) args.opts.seed = args.seed;

  try {
    const evospec::RunConfig cfg = evospec::load_config(args.config);
    if (verify->parsed()) return evospec::cmd_verify(cfg, args.opts);
    if (solve->parsed()) return evospec::cmd_solve(cfg, args.opts);
    if (converge->parsed()) return evospec::cmd_converge(cfg, args.opts);
    if (oracle->parsed()) return evospec::cmd_oracle(cfg, args.opts);
  } catch (const evospec::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
