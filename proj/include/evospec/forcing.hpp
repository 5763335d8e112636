#pragma once

#include <cstdint>
#include <string_view>

#include "evospec/solver.hpp"

namespace evospec {

// Smooth compactly supported time profiles on [t0, t1], zero outside.
class TimeProfile {
 public:
  enum class Kind { Sin2, Sin4, Bump };

  TimeProfile(Kind kind, double t0, double t1);

  Kind kind() const { return kind_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

  double value(double t) const;
  double deriv(double t) const;

 private:
  Kind kind_;
  double t0_, t1_;
};

// name in {"sin2", "sin4", "bump"}
TimeProfile make_profile(std::string_view name, double t0, double t1);

// Band-limited modal forcing: the lowest `pairs` eigen pairs and the first
// `kernel` kernel modes get coefficients (1 + mu^2)^(-decay) with random
// phases, all modulated by the same time profile.
struct ForcingSpec {
  std::size_t pairs = 4;
  std::size_t kernel = 0;
  double decay = 1.0;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  TimeProfile profile{TimeProfile::Kind::Sin2, 1.0, 2.0};
};

// forcing at full catalog resolution, one row per enumerated mode
WeightedSignal build_forcing(const SpatialOperator& op, const TimeGrid& grid,
                             const ForcingSpec& spec);

// f = (d/dt,nu M(d/dt,nu) + A) u for a prescribed full-resolution u, built on
// the frequency side; solving with this forcing must return u.
WeightedSignal manufactured_forcing(const EvolutionaryProblem& problem,
                                    const WeightedSignal& u_exact,
                                    int jobs = 0);

}  // namespace evospec
