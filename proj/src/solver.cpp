#include "evospec/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

namespace evospec {

EvolutionaryProblem::EvolutionaryProblem(
    MaterialLaw law, std::shared_ptr<const SpatialOperator> op, TimeGrid grid)
    : law_(std::move(law)), op_(std::move(op)), grid_(grid) {
  if (!op_) throw std::invalid_argument("EvolutionaryProblem: null operator");
  if (law_.dim() != op_->components()) {
    throw std::invalid_argument(
        "EvolutionaryProblem: law dimension does not match the operator");
  }
  if (!(grid_.nu() > law_.nu0())) {
    throw std::invalid_argument(
        "EvolutionaryProblem: grid weight must exceed the law's abscissa");
  }
  const std::vector<Complex> samples = coercivity_samples(grid_);
  coercivity_ = coercivity_lower_bound(law_, grid_.nu(), samples);
}

void EvolutionaryProblem::require_coercive() const {
  if (!coercivity_.coercive()) {
    std::ostringstream msg;
    msg << "problem is not coercive at nu = " << grid_.nu()
        << ": c_estimate = " << coercivity_.c_estimate;
    throw NotCoerciveError(msg.str());
  }
}

Eigen::MatrixXcd assemble_symbol(const EvolutionaryProblem& problem,
                                 const GalerkinScheme& scheme, Complex z) {
  return DenseSymbol(problem.law(), scheme).at(z);
}

WeightedSignal solve(const EvolutionaryProblem& problem,
                     const GalerkinScheme& scheme, const WeightedSignal& f,
                     SolveReport* report, SolveOptions opts) {
  if (!(f.grid() == problem.grid())) {
    throw std::invalid_argument("solve: forcing grid differs from the problem");
  }
  if (f.dim() != static_cast<Eigen::Index>(scheme.dim())) {
    throw std::invalid_argument(
        "solve: forcing dimension does not match the scheme");
  }
  if (&scheme.op() != problem.op_ptr().get()) {
    throw std::invalid_argument(
        "solve: scheme was built over a different operator");
  }
  problem.require_coercive();

  const auto started = std::chrono::steady_clock::now();

  const FrequencySignal fhat = fourier_laplace(f);
  const std::vector<Complex> zs = derivative_symbol(problem.grid());

  Eigen::MatrixXcd uhat;
  Eigen::VectorXd residual_sq;
  bool block_path = false;
  if (!opts.force_dense) {
    if (auto block = BlockSymbol::try_build(problem.law(), scheme)) {
      sweep_solve_parallel(*block, zs, fhat.values(), uhat, residual_sq,
                           opts.jobs);
      block_path = true;
    }
  }
  if (!block_path) {
    const DenseSymbol dense(problem.law(), scheme);
    sweep_solve_parallel(dense, zs, fhat.values(), uhat, residual_sq,
                         opts.jobs);
  }

  const WeightedSignal u = inverse_fourier_laplace(
      FrequencySignal(problem.grid(), std::move(uhat)));

  if (report) {
    const double scale = 2.0 * kPi / problem.grid().window();
    report->c_used = problem.coercivity().c_estimate;
    report->d_max = problem.coercivity().d_max;
    report->residual_abs = std::sqrt(scale * residual_sq.sum());
    const double fnorm = spectral_norm(fhat);
    report->residual_rel =
        fnorm > 0.0 ? report->residual_abs / fnorm : report->residual_abs;
    report->block_path = block_path;
    report->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
  }
  return u;
}

double causality_check(const WeightedSignal& u, const WeightedSignal& f) {
  if (!(u.grid() == f.grid())) {
    throw std::invalid_argument("causality_check: grids differ");
  }
  Eigen::Index first = f.values().cols();
  for (Eigen::Index k = 0; k < f.values().cols(); ++k) {
    if (f.values().col(k).squaredNorm() > 0.0) {
      first = k;
      break;
    }
  }
  const TimeGrid& grid = u.grid();
  double pre = 0.0;
  for (Eigen::Index k = 0; k < first; ++k) {
    const double t = grid.time_at(static_cast<std::size_t>(k));
    pre += std::exp(-2.0 * grid.nu() * t) * u.values().col(k).squaredNorm();
  }
  const double fnorm = weighted_norm(f);
  if (fnorm == 0.0) {
    throw std::invalid_argument("causality_check: forcing is identically zero");
  }
  return std::sqrt(pre * grid.dt()) / fnorm;
}

double nu_independence_check(const MaterialLaw& law,
                             const GalerkinScheme& scheme,
                             const Eigen::MatrixXcd& samples, double window,
                             double eps_wrap, double nu1, double nu2,
                             int jobs) {
  const std::size_t n = static_cast<std::size_t>(samples.cols());
  SolveOptions opts;
  opts.jobs = jobs;

  Eigen::MatrixXcd u[2];
  const double nus[2] = {nu1, nu2};
  for (int i = 0; i < 2; ++i) {
    const TimeGrid grid(window, n, nus[i], eps_wrap);
    EvolutionaryProblem problem(law, scheme.op_ptr(), grid);
    const WeightedSignal f(grid, samples);
    u[i] = solve(problem, scheme, f, nullptr, opts).values();
  }

  // compare the sample functions in the heavier weight's norm: each solve is
  // only accurate to its own weighted floor, and the lighter weight would
  // amplify the heavier solve's floor by exp((nu_max - nu) t)
  const TimeGrid heavy(window, n, std::max(nu1, nu2), eps_wrap);
  const WeightedSignal diff(heavy, u[1] - u[0]);
  const WeightedSignal base(heavy, u[0]);
  const double ref = weighted_norm(base);
  if (ref == 0.0) return weighted_norm(diff);
  return weighted_norm(diff) / ref;
}

}  // namespace evospec
