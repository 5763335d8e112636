#include "evospec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

#include "evospec/convergence.hpp"
#include "evospec/io.hpp"
#include "evospec/rng.hpp"

namespace evospec {

namespace {

nlohmann::json check_entry(const std::string& name, bool pass) {
  nlohmann::json j;
  j["name"] = name;
  j["pass"] = pass;
  return j;
}

Eigen::VectorXcd random_modal(Rng& rng, Eigen::Index dim) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.normal_complex();
  return v;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, const CliOptions& opts) {
  const auto op = cfg.make_operator();
  const MaterialLaw law = cfg.make_law();
  const TimeGrid grid = cfg.make_grid();
  const GalerkinScheme scheme =
      GalerkinScheme::pairs(op, cfg.pairs, cfg.kernel);
  Rng rng(opts.seed.value_or(cfg.seed));

  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  const auto note = [&](const std::string& name, bool pass,
                        nlohmann::json extra = {}) {
    nlohmann::json j = check_entry(name, pass);
    if (!extra.is_null()) j["data"] = std::move(extra);
    checks.push_back(std::move(j));
    all = all && pass;
  };

  // catalog integrity
  const CatalogCheck catalog = verify_catalog(*op, 200);
  {
    nlohmann::json data;
    data["orthonormality_defect"] = catalog.orthonormality_defect;
    data["quadrature_defect"] = catalog.quadrature_defect;
    data["eigen_defect"] = catalog.eigen_defect;
    data["boundary_defect"] = catalog.boundary_defect;
    data["modes_checked"] = catalog.modes_checked;
    note("catalog", catalog.worst() <= 1e-10, data);
  }

  // accretivity of the full and the projected symbol on the grid line
  const std::vector<Complex> samples = coercivity_samples(grid);
  const CoercivityReport full = coercivity_lower_bound(law, grid.nu(), samples);
  write_json(opts.out / "coercivity_report.json", coercivity_json(full));
  note("coercivity", full.coercive(), coercivity_json(full));

  const CoercivityReport projected =
      coercivity_lower_bound(law, scheme, grid.nu(), samples);
  {
    nlohmann::json data = coercivity_json(projected);
    // compressions cannot lose accretivity
    const bool pass =
        projected.coercive() && projected.c_estimate >= full.c_estimate - 1e-9;
    note("coercivity_projected", pass, data);
  }

  // transform round-trip and the norm identity
  {
    double worst_rt = 0.0, worst_pl = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
      Eigen::MatrixXcd values(3, grid.samples());
      for (Eigen::Index k = 0;
           k < static_cast<Eigen::Index>(grid.samples()); ++k) {
        values.col(k) = random_modal(rng, 3);
      }
      const WeightedSignal f(grid, values);
      const FrequencySignal fhat = fourier_laplace(f);
      const WeightedSignal back = inverse_fourier_laplace(fhat);
      // measured where the transform is an isometry; the raw sample norm
      // would scale the rounding floor by exp(nu t)
      const WeightedSignal diff(grid, back.values() - f.values());
      worst_rt = std::max(worst_rt, weighted_norm(diff) / weighted_norm(f));
      worst_pl = std::max(worst_pl,
                          std::abs(spectral_norm(fhat) - weighted_norm(f)) /
                              weighted_norm(f));
    }
    nlohmann::json data;
    data["round_trip"] = worst_rt;
    data["norm_identity"] = worst_pl;
    note("transform", worst_rt <= 1e-12 && worst_pl <= 1e-10, data);
  }

  // projection stability: || A_n P_n v || <= || A v ||
  {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::VectorXcd v =
          random_modal(rng, static_cast<Eigen::Index>(op->size()));
      const double full_norm = a_norm(*op, v);
      const Eigen::VectorXcd pv = apply_P(scheme, v);
      double local = 0.0;
      for (std::size_t i = 0; i < scheme.dim(); ++i) {
        const double mu = scheme.mu(i);
        local += mu * mu * std::norm(pv[static_cast<Eigen::Index>(i)]);
      }
      worst = std::max(worst, std::sqrt(local) - full_norm);
    }
    nlohmann::json data;
    data["worst_excess"] = worst;
    note("projection_stability", worst <= 1e-12, data);
  }

  // projected multiplier never exceeds the full multiplier norm
  {
    const ProjectedLaw plaw(law, scheme);
    double worst_ratio = 0.0;
    for (std::size_t m = 0; m < grid.samples();
         m += std::max<std::size_t>(1, grid.samples() / 16)) {
      const Complex z = grid.z_at(m);
      const double full_norm = law.z_times(z).operatorNorm();
      const double proj_norm = plaw.z_times(z).operatorNorm();
      worst_ratio = std::max(worst_ratio, proj_norm / full_norm);
    }
    nlohmann::json data;
    data["worst_ratio"] = worst_ratio;
    note("multiplier_bound", worst_ratio <= 1.0 + 1e-10, data);
  }

  // end-to-end solve keeps its residual at solver precision
  {
    ForcingSpec spec = cfg.make_forcing_spec();
    spec.kernel = std::min(spec.kernel, cfg.kernel);
    const WeightedSignal f_full = build_forcing(*op, grid, spec);
    const WeightedSignal f = apply_P(scheme, f_full);
    EvolutionaryProblem problem(law, op, grid);
    SolveReport report;
    SolveOptions sopts;
    sopts.jobs = opts.jobs;
    sopts.force_dense = opts.force_dense;
    const WeightedSignal u = solve(problem, scheme, f, &report, sopts);
    nlohmann::json data;
    data["residual_rel"] = report.residual_rel;
    data["block_path"] = report.block_path;
    note("solve_residual", report.residual_rel <= 1e-10, data);
  }

  nlohmann::json report;
  report["checks"] = std::move(checks);
  report["pass"] = all;
  write_json(opts.out / "verify_report.json", report);
  if (!all) std::cerr << "verify: at least one check failed\n";
  return all ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg, const CliOptions& opts) {
  const auto op = cfg.make_operator();
  const MaterialLaw law = cfg.make_law();
  const TimeGrid grid = cfg.make_grid();
  const GalerkinScheme scheme =
      GalerkinScheme::pairs(op, cfg.pairs, cfg.kernel);
  if (cfg.excite_kernel > cfg.kernel) {
    throw ConfigError(
        "config: forcing.kernel: excitation outside the solving scheme");
  }

  ForcingSpec spec = cfg.make_forcing_spec();
  if (opts.seed) spec.seed = *opts.seed;
  const WeightedSignal f_full = build_forcing(*op, grid, spec);
  const WeightedSignal f = apply_P(scheme, f_full);

  EvolutionaryProblem problem(law, op, grid);
  SolveReport report;
  SolveOptions sopts;
  sopts.jobs = opts.jobs;
  sopts.force_dense = opts.force_dense;
  const WeightedSignal u = solve(problem, scheme, f, &report, sopts);

  const double fnorm = weighted_norm(f);
  const double unorm = weighted_norm(u);
  const double c = problem.coercivity().c_estimate;
  const double bound =
      fnorm / c * (1.0 + 1e-6) + grid.eps_wrap() * fnorm / c;
  const double causality = causality_check(u, f);

  write_signal_csv(opts.out / "solution.csv", u);
  write_json(opts.out / "scheme.json", scheme_json(scheme));

  nlohmann::json j;
  j["c_used"] = report.c_used;
  j["d_max"] = report.d_max;
  j["residual_rel"] = report.residual_rel;
  j["block_path"] = report.block_path;
  j["norm_forcing"] = fnorm;
  j["norm_solution"] = unorm;
  j["norm_bound"] = bound;
  j["causality_defect"] = causality;
  const bool pass = report.residual_rel <= 1e-10 && unorm <= bound;
  j["pass"] = pass;
  write_json(opts.out / "solve_report.json", j);
  if (!pass) std::cerr << "solve: solution failed its certificate\n";
  return pass ? 0 : 1;
}

int cmd_converge(const RunConfig& cfg, const CliOptions& opts) {
  const auto op = cfg.make_operator();
  const MaterialLaw law = cfg.make_law();
  const TimeGrid grid = cfg.make_grid();

  ForcingSpec spec = cfg.make_forcing_spec();
  if (opts.seed) spec.seed = *opts.seed;
  const WeightedSignal f_full = build_forcing(*op, grid, spec);

  EvolutionaryProblem problem(law, op, grid);
  ConvergenceTable table =
      convergence_sweep(problem, f_full, cfg.pair_counts, opts.jobs);
  table.seed = spec.seed;

  write_convergence_csv(opts.out / "convergence.csv", table);
  nlohmann::json j;
  j["problem"] = table.problem;
  j["scheme"] = table.scheme;
  j["c_used"] = table.c_used;
  j["rows"] = table.rows.size();
  j["all_pass"] = table.all_pass();
  write_json(opts.out / "converge_report.json", j);
  if (!table.all_pass()) {
    std::cerr << "converge: an error bound was violated\n";
  }
  return table.all_pass() ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const CliOptions& opts) {
  const std::uint64_t seed0 = opts.seed.value_or(cfg.oracle_seed);
  nlohmann::json violations = nlohmann::json::array();
  double worst_ratio = 0.0;
  double max_err_full = 0.0;
  std::optional<OracleOutcome> worst_outcome;

  for (std::size_t i = 0; i < cfg.oracle_instances; ++i) {
    const Eigen::Index span = cfg.oracle_max_dim - 3;
    const Eigen::Index m =
        4 + static_cast<Eigen::Index>((i * 5 + 3) %
                                      static_cast<std::size_t>(span));
    const std::uint64_t seed = seed0 + i;
    const OracleInstance inst =
        make_oracle_instance(m, cfg.oracle_c, cfg.oracle_d, seed);
    Rng rng(seed ^ 0x5eedULL);
    Eigen::VectorXcd f = random_modal(rng, m);
    f /= f.norm();

    std::vector<std::size_t> ns;
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      ns.push_back(std::max<std::size_t>(
          1, static_cast<std::size_t>(frac * static_cast<double>(m))));
    }
    const OracleOutcome outcome = oracle_resolvent_convergence(inst, f, ns);

    const double ratio = outcome.resolvent_sup / outcome.resolvent_limit;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_outcome = outcome;
    }
    max_err_full = std::max(max_err_full, outcome.err_at_full);

    const bool ok = outcome.invertible && ratio <= 1.0 + 1e-9 &&
                    outcome.table.all_pass() &&
                    outcome.err_at_full <= 1e-10;
    if (!ok) {
      nlohmann::json v;
      v["seed"] = seed;
      v["dim"] = m;
      v["invertible"] = outcome.invertible;
      v["resolvent_ratio"] = ratio;
      v["err_at_full"] = outcome.err_at_full;
      nlohmann::json bad_rows = nlohmann::json::array();
      for (const ConvergenceRow& r : outcome.table.rows) {
        if (!r.pass) bad_rows.push_back(r.n);
      }
      v["failed_sections"] = bad_rows;
      violations.push_back(std::move(v));
    }
  }

  if (worst_outcome) {
    write_convergence_csv(opts.out / "oracle_worst.csv",
                          worst_outcome->table);
  }
  nlohmann::json j;
  j["instances"] = cfg.oracle_instances;
  j["c"] = cfg.oracle_c;
  j["d"] = cfg.oracle_d;
  j["worst_resolvent_ratio"] = worst_ratio;
  j["max_err_at_full"] = max_err_full;
  j["violations"] = violations;
  const bool pass = violations.empty();
  j["pass"] = pass;
  write_json(opts.out / "oracle_report.json", j);
  if (!pass) {
    std::cerr << "oracle: " << violations.size()
              << " instance(s) violated a bound; seeds recorded for replay\n";
  }
  return pass ? 0 : 1;
}

}  // namespace evospec
