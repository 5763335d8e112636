#include "evospec/forcing.hpp"

#include <cmath>
#include <stdexcept>

#include "evospec/parallel.hpp"
#include "evospec/rng.hpp"

namespace evospec {

TimeProfile::TimeProfile(Kind kind, double t0, double t1)
    : kind_(kind), t0_(t0), t1_(t1) {
  if (!(t1 > t0)) {
    throw std::invalid_argument("TimeProfile: need t1 > t0");
  }
}

double TimeProfile::value(double t) const {
  if (t <= t0_ || t >= t1_) return 0.0;
  const double s = (t - t0_) / (t1_ - t0_);
  switch (kind_) {
    case Kind::Sin2: {
      const double v = std::sin(kPi * s);
      return v * v;
    }
    case Kind::Sin4: {
      const double v = std::sin(kPi * s);
      return v * v * v * v;
    }
    case Kind::Bump:
      return std::exp(4.0 - 1.0 / (s * (1.0 - s)));
  }
  return 0.0;
}

double TimeProfile::deriv(double t) const {
  if (t <= t0_ || t >= t1_) return 0.0;
  const double len = t1_ - t0_;
  const double s = (t - t0_) / len;
  switch (kind_) {
    case Kind::Sin2:
      return kPi / len * std::sin(2.0 * kPi * s);
    case Kind::Sin4: {
      const double v = std::sin(kPi * s);
      return 4.0 * kPi / len * v * v * v * std::cos(kPi * s);
    }
    case Kind::Bump: {
      const double g = s * (1.0 - s);
      return value(t) * (1.0 - 2.0 * s) / (g * g) / len;
    }
  }
  return 0.0;
}

TimeProfile make_profile(std::string_view name, double t0, double t1) {
  if (name == "sin2") return TimeProfile(TimeProfile::Kind::Sin2, t0, t1);
  if (name == "sin4") return TimeProfile(TimeProfile::Kind::Sin4, t0, t1);
  if (name == "bump") return TimeProfile(TimeProfile::Kind::Bump, t0, t1);
  throw std::invalid_argument("make_profile: unknown profile '" +
                              std::string(name) + "'");
}

WeightedSignal build_forcing(const SpatialOperator& op, const TimeGrid& grid,
                             const ForcingSpec& spec) {
  if (spec.pairs > op.pair_count() || spec.kernel > op.kernel_count()) {
    throw std::invalid_argument(
        "build_forcing: excitation exceeds the catalog resolution");
  }
  if (spec.pairs + spec.kernel == 0) {
    throw std::invalid_argument("build_forcing: nothing excited");
  }

  Rng rng(spec.seed);
  Eigen::VectorXcd modal =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op.size()));
  for (std::size_t i = 0; i < spec.kernel; ++i) {
    const double phase = rng.uniform(0.0, 2.0 * kPi);
    modal[static_cast<Eigen::Index>(i)] =
        spec.amplitude * std::exp(Complex(0.0, phase));
  }
  const std::size_t base = op.kernel_count();
  for (std::size_t p = 0; p < spec.pairs; ++p) {
    const double mu = op.mu(base + 2 * p);
    const double amp =
        spec.amplitude * std::pow(1.0 + mu * mu, -spec.decay);
    for (int s = 0; s < 2; ++s) {
      const double phase = rng.uniform(0.0, 2.0 * kPi);
      modal[static_cast<Eigen::Index>(base + 2 * p + static_cast<std::size_t>(
                                                          s))] =
          amp * std::exp(Complex(0.0, phase));
    }
  }

  Eigen::MatrixXcd values(modal.size(),
                          static_cast<Eigen::Index>(grid.samples()));
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    values.col(static_cast<Eigen::Index>(k)) =
        spec.profile.value(grid.time_at(k)) * modal;
  }
  return WeightedSignal(grid, std::move(values));
}

WeightedSignal manufactured_forcing(const EvolutionaryProblem& problem,
                                    const WeightedSignal& u_exact, int jobs) {
  const SpatialOperator& op = problem.op();
  if (u_exact.dim() != static_cast<Eigen::Index>(op.size())) {
    throw std::invalid_argument(
        "manufactured_forcing: u_exact is not at full catalog resolution");
  }
  if (!(u_exact.grid() == problem.grid())) {
    throw std::invalid_argument(
        "manufactured_forcing: grid differs from the problem");
  }
  const GalerkinScheme full = GalerkinScheme::pairs(
      problem.op_ptr(), op.pair_count(), op.kernel_count());

  const FrequencySignal uhat = fourier_laplace(u_exact);
  const std::vector<Complex> zs = derivative_symbol(problem.grid());
  Eigen::MatrixXcd fhat(uhat.values().rows(), uhat.values().cols());

  if (auto block = BlockSymbol::try_build(problem.law(), full)) {
    parallel_for(zs.size(), jobs, [&](std::size_t m) {
      const Eigen::Index col = static_cast<Eigen::Index>(m);
      Eigen::VectorXcd out;
      block->apply(zs[m], uhat.values().col(col), out);
      fhat.col(col) = out;
    });
  } else {
    const DenseSymbol dense(problem.law(), full);
    parallel_for(zs.size(), jobs, [&](std::size_t m) {
      const Eigen::Index col = static_cast<Eigen::Index>(m);
      fhat.col(col) = dense.at(zs[m]) * uhat.values().col(col);
    });
  }
  return inverse_fourier_laplace(
      FrequencySignal(problem.grid(), std::move(fhat)));
}

}  // namespace evospec
