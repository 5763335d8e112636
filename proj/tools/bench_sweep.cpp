#include <benchmark/benchmark.h>

#include "evospec/forcing.hpp"
#include "evospec/solver.hpp"

namespace {

using namespace evospec;

struct Fixture {
  Fixture(std::size_t pairs, std::size_t samples)
      : op(SpatialOperator::mixed_bc_1d(pairs)),
        grid(24.0, samples, 1.0),
        scheme(GalerkinScheme::pairs(op, pairs, 0)),
        law(heat_law(1, 1)),
        zs(derivative_symbol(grid)) {
    ForcingSpec spec;
    spec.pairs = pairs;
    spec.decay = 0.5;
    spec.profile = TimeProfile(TimeProfile::Kind::Sin2, 1.0, 6.0);
    const WeightedSignal f = build_forcing(*op, grid, spec);
    fhat = fourier_laplace(apply_P(scheme, f)).values();
  }

  std::shared_ptr<const SpatialOperator> op;
  TimeGrid grid;
  GalerkinScheme scheme;
  MaterialLaw law;
  std::vector<Complex> zs;
  Eigen::MatrixXcd fhat;
};

Fixture& fixture() {
  static Fixture fx(128, 1024);
  return fx;
}

void BM_sweep_dense_serial(benchmark::State& state) {
  Fixture& fx = fixture();
  const DenseSymbol symbol(fx.law, fx.scheme);
  Eigen::MatrixXcd uhat;
  Eigen::VectorXd rsq;
  for (auto _ : state) {
    sweep_solve_serial(symbol, fx.zs, fx.fhat, uhat, rsq);
    benchmark::DoNotOptimize(uhat.data());
  }
}

void BM_sweep_dense_parallel(benchmark::State& state) {
  Fixture& fx = fixture();
  const DenseSymbol symbol(fx.law, fx.scheme);
  const int jobs = static_cast<int>(state.range(0));
  Eigen::MatrixXcd uhat;
  Eigen::VectorXd rsq;
  for (auto _ : state) {
    sweep_solve_parallel(symbol, fx.zs, fx.fhat, uhat, rsq, jobs);
    benchmark::DoNotOptimize(uhat.data());
  }
}

void BM_sweep_block_parallel(benchmark::State& state) {
  Fixture& fx = fixture();
  const auto symbol = BlockSymbol::try_build(fx.law, fx.scheme);
  const int jobs = static_cast<int>(state.range(0));
  Eigen::MatrixXcd uhat;
  Eigen::VectorXd rsq;
  for (auto _ : state) {
    sweep_solve_parallel(*symbol, fx.zs, fx.fhat, uhat, rsq, jobs);
    benchmark::DoNotOptimize(uhat.data());
  }
}

}  // namespace

BENCHMARK(BM_sweep_dense_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_dense_parallel)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Arg(0)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_block_parallel)
    ->Arg(1)
    ->Arg(4)
    ->Arg(0)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
