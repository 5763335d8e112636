// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line with its measured quantities and the pinned tolerance it was held to;
// the process exits 0 only if every criterion passes.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "evospec/convergence.hpp"
#include "evospec/forcing.hpp"
#include "evospec/rng.hpp"
#include "evospec/solver.hpp"
#include "support/euler.hpp"

using namespace evospec;
namespace fs = std::filesystem;

namespace {

// every tolerance the gate uses, in one place
constexpr double kTolRoundtrip = 1e-12;    // transform inverse, relative
constexpr double kTolPlancherel = 1e-10;   // norm identity, relative
constexpr double kTolCoercivity = 1e-9;    // against the closed form
constexpr double kTolStabilityA = 1e-12;   // ||A_n P_n v|| vs ||A v||, rel
constexpr double kTolStabilityM = 1e-10;   // ||M_n(z)|| vs ||M(z)||, rel
constexpr double kTolSolutionBound = 1e-6; // headroom on ||u|| <= ||f||/c
constexpr double kTolCausality = 1e-6;     // pre-support energy ratio
constexpr double kTolNuChange = 1e-6;      // weight independence, relative
constexpr double kTolBandExact = 1e-8;     // resolved-band recovery, relative
constexpr double kTolMonotone = 1e-12;     // slack on weak error decrease
constexpr double kTolResolvent = 1e-9;     // headroom on the uniform bound
constexpr double kTolOracleFull = 1e-10;   // full-section recovery
constexpr double kEulerErrMax = 0.05;      // spectral vs implicit Euler, rel
constexpr double kEulerRatioLo = 1.5;      // first-order halving window
constexpr double kEulerRatioHi = 2.5;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Eigen::MatrixXcd random_matrix(Rng& rng, Eigen::Index rows,
                               Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal_complex();
  }
  return m;
}

// ---------------------------------------------------------------- criteria

Outcome transform_identities() {
  double worst_rt = 0.0, worst_pl = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = rep % 2 == 0 ? 64 : 256;
    const Eigen::Index m = rep % 3 == 0 ? 3 : 2;
    const TimeGrid grid(8.0, n, 3.0);
    Rng rng(500 + static_cast<std::uint64_t>(rep));
    const WeightedSignal f(grid,
                           random_matrix(rng, m, static_cast<Eigen::Index>(n)));
    const FrequencySignal fhat = fourier_laplace(f);
    const WeightedSignal back = inverse_fourier_laplace(fhat);
    const double fnorm = weighted_norm(f);
    worst_rt = std::max(worst_rt, weighted_norm(WeightedSignal(
                                      grid, back.values() - f.values())) /
                                      fnorm);
    worst_pl = std::max(worst_pl,
                        std::abs(spectral_norm(fhat) - fnorm) / fnorm);
  }
  Outcome out;
  out.pass = worst_rt <= kTolRoundtrip && worst_pl <= kTolPlancherel;
  out.detail = "roundtrip=" + num(worst_rt) + " (tol " + num(kTolRoundtrip) +
               "), norm_identity=" + num(worst_pl) + " (tol " +
               num(kTolPlancherel) + ")";
  return out;
}

Outcome coercivity_constants() {
  double worst = 0.0;
  const auto op = SpatialOperator::periodic_1d(6);
  const MaterialLaw law = heat_law(1, 1);
  for (double nu : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double window = std::max(20.0, 20.0 / nu);
    const TimeGrid grid(window, 128, nu);
    const auto samples = coercivity_samples(grid);
    const CoercivityReport full = coercivity_lower_bound(law, nu, samples);

    const double c_exact = std::min(nu, 1.0);
    const double xi_max = kPi * 128.0 / window;
    const double d_exact = std::max(std::hypot(nu, xi_max), 1.0);
    worst = std::max(worst, std::abs(full.c_estimate - c_exact) / c_exact);
    worst = std::max(worst, std::abs(full.d_max - d_exact) / d_exact);

    const GalerkinScheme scheme = build_scheme(op, 6, 2);
    const CoercivityReport proj =
        coercivity_lower_bound(law, scheme, nu, samples);
    worst = std::max(worst, std::abs(proj.c_estimate - c_exact) / c_exact);
    worst = std::max(worst, std::max(0.0, full.c_estimate - proj.c_estimate));
  }
  Outcome out;
  out.pass = worst <= kTolCoercivity;
  out.detail = "worst_defect=" + num(worst) + " vs min(nu,1), max(|z|,1) (tol " +
               num(kTolCoercivity) + ")";
  return out;
}

Outcome projection_stability() {
  double worst_a = 0.0, worst_m = 0.0;
  const TimeGrid grid(8.0, 64, 3.0);
  // catalogs with at least 200 enumerated modes each
  for (const auto& op :
       {SpatialOperator::mixed_bc_1d(100), SpatialOperator::periodic_1d(99),
        SpatialOperator::dirichlet_square_2d(67)}) {
    const GalerkinScheme scheme =
        build_scheme(op, 25, std::min<std::size_t>(op->kernel_count(), 5));
    const MaterialLaw law =
        heat_law(op->theta_components(), op->q_components());

    Rng rng(40);
    for (int rep = 0; rep < 34; ++rep) {
      const Eigen::VectorXcd v =
          random_matrix(rng, static_cast<Eigen::Index>(op->size()), 1);
      const Eigen::VectorXcd pv = apply_P(scheme, v);
      double an_sq = 0.0;
      for (std::size_t i = 0; i < scheme.dim(); ++i) {
        an_sq += scheme.mu(i) * scheme.mu(i) *
                 std::norm(pv[static_cast<Eigen::Index>(i)]);
      }
      const double full_a = a_norm(*op, v);
      if (full_a > 0.0) {
        worst_a = std::max(worst_a, (std::sqrt(an_sq) - full_a) / full_a);
      }
    }

    const ProjectedLaw projected(law, scheme);
    for (std::size_t m = 0; m < grid.samples(); ++m) {
      const Complex z = grid.z_at(m);
      // the heat multiplier attains max{|z|, 1}; compressions stay below it
      const double limit = std::max(std::abs(z), 1.0);
      const double proj = projected.z_times(z).operatorNorm();
      worst_m = std::max(worst_m, (proj - limit) / limit);
    }
  }
  Outcome out;
  out.pass = worst_a <= kTolStabilityA && worst_m <= kTolStabilityM;
  out.detail = "A_excess=" + num(worst_a) + " (tol " + num(kTolStabilityA) +
               "), M_excess=" + num(worst_m) + " (tol " + num(kTolStabilityM) +
               ")";
  return out;
}

Outcome solution_bound() {
  const TimeGrid grid(8.0, 256, 2.5);
  double worst = 0.0;
  int solves = 0;
  const char* profiles[] = {"sin2", "sin4", "bump"};
  for (int i = 0; i < 20; ++i) {
    const auto op = i % 3 == 0   ? SpatialOperator::mixed_bc_1d(12)
                    : i % 3 == 1 ? SpatialOperator::periodic_1d(12)
                                 : SpatialOperator::dirichlet_square_2d(12);
    const MaterialLaw law =
        heat_law(op->theta_components(), op->q_components());
    const EvolutionaryProblem problem(law, op, grid);
    const GalerkinScheme scheme =
        build_scheme(op, 12, std::min<std::size_t>(op->kernel_count(), 2));

    ForcingSpec spec;
    spec.pairs = 6;
    spec.kernel = std::min<std::size_t>(op->kernel_count(), 1);
    spec.decay = 0.5 + 0.1 * static_cast<double>(i % 4);
    spec.seed = 100 + static_cast<std::uint64_t>(i);
    spec.profile = make_profile(profiles[i % 3], 1.0, 2.0 + (i % 3));
    const WeightedSignal f = apply_P(scheme, build_forcing(*op, grid, spec));

    SolveReport report;
    const WeightedSignal u = solve(problem, scheme, f, &report);
    worst = std::max(worst, weighted_norm(u) * report.c_used /
                                weighted_norm(f));
    ++solves;
  }
  Outcome out;
  out.pass = worst <= 1.0 + kTolSolutionBound;
  out.detail = std::to_string(solves) +
               " solves, max c||u||/||f||=" + num(worst) + " (allowed 1+" +
               num(kTolSolutionBound) + ")";
  return out;
}

Outcome causal_support() {
  const auto op = SpatialOperator::mixed_bc_1d(16);
  const TimeGrid grid(8.0, 512, 2.5);
  const MaterialLaw law = heat_law(1, 1);
  const EvolutionaryProblem problem(law, op, grid);
  const GalerkinScheme scheme = build_scheme(op, 16, 0);

  double worst = 0.0;
  for (std::uint64_t seed : {9, 10, 11}) {
    ForcingSpec spec;
    spec.pairs = 6;
    spec.decay = 1.0;
    spec.seed = seed;
    // smooth pulse: the interpolation floor must not mask the wrap level
    spec.profile = TimeProfile(TimeProfile::Kind::Bump, 1.0, 2.0);
    const WeightedSignal f = apply_P(scheme, build_forcing(*op, grid, spec));
    worst = std::max(worst, causality_check(solve(problem, scheme, f), f));
  }
  Outcome out;
  out.pass = worst <= kTolCausality;
  out.detail = "pre-support energy ratio=" + num(worst) + " (tol " +
               num(kTolCausality) + ")";
  return out;
}

Outcome weight_independence() {
  const auto op = SpatialOperator::periodic_1d(8);
  const MaterialLaw law = heat_law(1, 1);
  const GalerkinScheme scheme = build_scheme(op, 8, 2);
  const double window = 24.0;
  const TimeGrid grid(window, 1024, 1.0);

  ForcingSpec spec;
  spec.pairs = 4;
  spec.kernel = 2;
  spec.decay = 1.0;
  spec.seed = 5;
  spec.profile = TimeProfile(TimeProfile::Kind::Sin4, 2.0, 9.0);
  const WeightedSignal f = apply_P(scheme, build_forcing(*op, grid, spec));

  const double defect = nu_independence_check(law, scheme, f.values(), window,
                                              1e-8, 1.0, 2.0);
  Outcome out;
  out.pass = defect <= kTolNuChange;
  out.detail = "nu=1 vs nu=2 discrepancy=" + num(defect) + " (tol " +
               num(kTolNuChange) + ")";
  return out;
}

Outcome resolved_band_recovery() {
  const auto op = SpatialOperator::mixed_bc_1d(8);
  const TimeGrid grid(8.0, 256, 3.0);
  const MaterialLaw law = heat_law(1, 1);
  const EvolutionaryProblem problem(law, op, grid);

  ForcingSpec spec;
  spec.pairs = 4;
  spec.decay = 0.7;
  spec.seed = 7;
  spec.profile = TimeProfile(TimeProfile::Kind::Sin4, 1.0, 5.0);
  const WeightedSignal f_full = build_forcing(*op, grid, spec);

  const GalerkinScheme full = build_scheme(op, 8, 0);
  const WeightedSignal u_full = solve(problem, full, f_full);
  const double ref = weighted_norm(u_full);

  double worst = 0.0;
  for (std::size_t n : {4UL, 6UL}) {
    const GalerkinScheme section = build_scheme(op, n, 0);
    const WeightedSignal u_n =
        solve(problem, section, apply_P(section, f_full));
    const WeightedSignal lifted = embed_J(section, u_n);
    worst = std::max(worst, weighted_norm(WeightedSignal(
                                grid, lifted.values() - u_full.values())) /
                                ref);
  }
  Outcome out;
  out.pass = worst <= kTolBandExact;
  out.detail = "sections {4,6} on a 4-pair band, err=" + num(worst) +
               " (tol " + num(kTolBandExact) + ")";
  return out;
}

Outcome galerkin_convergence() {
  const auto op = SpatialOperator::mixed_bc_1d(64);
  const TimeGrid grid(24.0, 1024, 1.0);
  const MaterialLaw law = heat_law(1, 1);
  const EvolutionaryProblem problem(law, op, grid);

  ForcingSpec spec;
  spec.pairs = 64;
  spec.decay = 1.0;
  spec.seed = 2;
  spec.profile = TimeProfile(TimeProfile::Kind::Sin2, 2.0, 9.0);
  const WeightedSignal f = build_forcing(*op, grid, spec);

  const std::vector<std::size_t> counts = {4, 8, 16, 32};
  const ConvergenceTable table = convergence_sweep(problem, f, counts);

  bool monotone = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    monotone = monotone &&
               table.rows[i].err_graph <=
                   table.rows[i - 1].err_graph * (1.0 + kTolMonotone) &&
               table.rows[i].err_h <=
                   table.rows[i - 1].err_h * (1.0 + kTolMonotone);
  }
  const bool nontrivial = table.rows.front().err_graph > 1e-6;

  Outcome out;
  out.pass = table.all_pass() && monotone && nontrivial;
  out.detail = "err_graph " + num(table.rows.front().err_graph) + " -> " +
               num(table.rows.back().err_graph) +
               ", bounds=" + (table.all_pass() ? "held" : "violated") +
               ", decrease=" + (monotone ? "weakly monotone" : "broken");
  return out;
}

Outcome oracle_bounds() {
  double worst_ratio = 0.0, worst_full = 0.0;
  bool all = true;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index m = 4 + (i * 5 + 3) % 37;
    const OracleInstance inst =
        make_oracle_instance(m, 0.3, 2.0, 1000 + static_cast<std::uint64_t>(i));
    Rng rng(2000 + static_cast<std::uint64_t>(i));
    Eigen::VectorXcd f = random_matrix(rng, m, 1);
    f /= f.norm();

    const std::size_t mu = static_cast<std::size_t>(m);
    std::vector<std::size_t> ns = {std::max<std::size_t>(1, mu / 4), mu / 2,
                                   (3 * mu) / 4};
    const OracleOutcome o = oracle_resolvent_convergence(inst, f, ns);
    worst_ratio = std::max(worst_ratio, o.resolvent_sup / o.resolvent_limit);
    worst_full = std::max(worst_full, o.err_at_full);
    all = all && o.invertible && o.table.all_pass() &&
          o.resolvent_sup <= o.resolvent_limit * (1.0 + kTolResolvent) &&
          o.err_at_full <= kTolOracleFull;
  }
  Outcome out;
  out.pass = all;
  out.detail = "100 instances (dim 4..40), resolvent/limit<=" +
               num(worst_ratio) + " (allowed 1+" + num(kTolResolvent) +
               "), full-section err=" + num(worst_full) + " (tol " +
               num(kTolOracleFull) + ")";
  return out;
}

Outcome euler_cross_check() {
  const auto op = SpatialOperator::mixed_bc_1d(3);
  const GalerkinScheme scheme = build_scheme(op, 3, 0);
  const MaterialLaw law = heat_law(1, 1);
  const double window = 8.0;
  const TimeGrid grid(window, 2048, 3.0);
  const EvolutionaryProblem problem(law, op, grid);

  const TimeProfile pulse(TimeProfile::Kind::Sin4, 1.0, 6.0);
  Rng rng(2);
  Eigen::VectorXcd modal(6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double mu = scheme.mu(static_cast<std::size_t>(i));
    modal[i] = rng.normal_complex() / (1.0 + mu * mu);
  }
  Eigen::MatrixXcd values(6, 2048);
  for (std::size_t k = 0; k < 2048; ++k) {
    values.col(static_cast<Eigen::Index>(k)) =
        pulse.value(grid.time_at(k)) * modal;
  }
  const WeightedSignal u = solve(problem, scheme, WeightedSignal(grid, values));

  const ProjectedLaw projected(law, scheme);
  const Eigen::MatrixXcd p0 = projected.project_constant(law.m0());
  const Eigen::MatrixXcd p1 = projected.project_constant(law.m1());
  const Eigen::VectorXcd a_diag = project_A_diag(scheme);

  const Eigen::MatrixXcd fine =
      testing::implicit_euler(p0, p1, a_diag, modal, pulse, window, 2048);
  const Eigen::MatrixXcd coarse =
      testing::implicit_euler(p0, p1, a_diag, modal, pulse, window, 1024);

  const double err_fine = (u.values() - fine).norm() / u.values().norm();
  Eigen::MatrixXcd ref_coarse(6, 1024);
  for (Eigen::Index k = 0; k < 1024; ++k) {
    ref_coarse.col(k) = u.values().col(2 * k);
  }
  const double err_coarse = (ref_coarse - coarse).norm() / ref_coarse.norm();
  const double ratio = err_coarse / err_fine;

  Outcome out;
  out.pass = err_fine <= kEulerErrMax && ratio >= kEulerRatioLo &&
             ratio <= kEulerRatioHi;
  out.detail = "err(dt=T/2048)=" + num(err_fine) + " (tol " +
               num(kEulerErrMax) + "), halving ratio=" + num(ratio) +
               " (window [" + num(kEulerRatioLo) + ", " + num(kEulerRatioHi) +
               "])";
  return out;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + EVOSPEC_CLI_PATH + "\" " + args +
                          " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / "evospec_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const fs::path cfg = root / "run.json";
  {
    std::ofstream out(cfg);
    out << R"({
  "schema_version": 1,
  "problem": {"instance": "mixed_bc_1d", "nu": 1.0, "window": 24.0,
               "samples": 256, "pairs": 16},
  "forcing": {"profile": "sin2", "t0": 2.0, "t1": 6.0, "pairs": 8,
               "decay": 1.0, "seed": 3},
  "converge": {"pair_counts": [2, 4, 8, 16]}
})";
  }

  const std::string cfg_arg = "--config \"" + cfg.string() + "\"";
  bool ok = true;
  std::string what;

  const auto expect_zero = [&](const std::string& args, const char* tag) {
    const int rc = run_cli(args, root / (std::string(tag) + ".log"));
    if (rc != 0) {
      ok = false;
      what += std::string(tag) + " exited " + std::to_string(rc) + "; ";
    }
  };

  expect_zero("solve " + cfg_arg + " --out \"" + (root / "s1").string() +
                  "\" --jobs 1",
              "solve_j1");
  expect_zero("solve " + cfg_arg + " --out \"" + (root / "s4").string() +
                  "\" --jobs 4",
              "solve_j4");
  expect_zero("converge " + cfg_arg + " --out \"" + (root / "c1").string() +
                  "\" --jobs 1",
              "conv_j1");
  expect_zero("converge " + cfg_arg + " --out \"" + (root / "c4").string() +
                  "\" --jobs 4",
              "conv_j4");

  const std::string s1 = slurp(root / "s1" / "solution.csv");
  const std::string s4 = slurp(root / "s4" / "solution.csv");
  const std::string c1 = slurp(root / "c1" / "convergence.csv");
  const std::string c4 = slurp(root / "c4" / "convergence.csv");
  if (s1.empty() || c1.empty()) {
    ok = false;
    what += "missing artifacts; ";
  }
  if (s1 != s4) {
    ok = false;
    what += "solution.csv differs across --jobs; ";
  }
  if (c1 != c4) {
    ok = false;
    what += "convergence.csv differs across --jobs; ";
  }

  Outcome out;
  out.pass = ok;
  out.detail = ok ? "solve and converge artifacts byte-identical for --jobs 1 vs 4"
                  : what;
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"C01", "weighted transform inverts and preserves the norm",
       transform_identities},
      {"C02", "accretivity constants match the closed form",
       coercivity_constants},
      {"C03", "projections never amplify A or the multiplier",
       projection_stability},
      {"C04", "solutions obey the 1/c estimate", solution_bound},
      {"C05", "solutions are causal", causal_support},
      {"C06", "the weight does not change the solution", weight_independence},
      {"C07", "resolved bands are recovered exactly", resolved_band_recovery},
      {"C08", "pair sections converge within the a priori bounds",
       galerkin_convergence},
      {"C09", "random sections obey the uniform resolvent bound",
       oracle_bounds},
      {"C10", "implicit Euler converges to the spectral solution",
       euler_cross_check},
      {"C11", "cli artifacts are deterministic across thread counts",
       cli_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %s %s: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n",
              static_cast<int>(criteria.size()) - failures);
  return failures == 0 ? 0 : 1;
}
