#pragma once

#include <memory>
#include <stdexcept>

#include "evospec/fourier_laplace.hpp"
#include "evospec/galerkin.hpp"
#include "evospec/sweep.hpp"

namespace evospec {

struct NotCoerciveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The autonomous problem (d/dt,nu M(d/dt,nu) + A) u = f realised on a
// weighted window. Holds the ingredients plus the accretivity estimate of
// z M(z) over the grid frequencies, which every solve checks first.
class EvolutionaryProblem {
 public:
  EvolutionaryProblem(MaterialLaw law,
                      std::shared_ptr<const SpatialOperator> op,
                      TimeGrid grid);

  const MaterialLaw& law() const { return law_; }
  const SpatialOperator& op() const { return *op_; }
  const std::shared_ptr<const SpatialOperator>& op_ptr() const { return op_; }
  const TimeGrid& grid() const { return grid_; }
  double nu() const { return grid_.nu(); }

  const CoercivityReport& coercivity() const { return coercivity_; }
  void require_coercive() const;

 private:
  MaterialLaw law_;
  std::shared_ptr<const SpatialOperator> op_;
  TimeGrid grid_;
  CoercivityReport coercivity_;
};

struct SolveOptions {
  int jobs = 0;           // 0 = all hardware threads
  bool force_dense = false;
};

struct SolveReport {
  double c_used = 0.0;        // accretivity constant backing the solve
  double d_max = 0.0;
  double residual_abs = 0.0;  // sqrt(2 pi / T sum_m || K u - fhat ||^2)
  double residual_rel = 0.0;  // relative to spectral_norm(fhat)
  bool block_path = false;
  double seconds = 0.0;       // never serialised, timing is for benchmarks
};

// Transform, sweep, transform back. f must live on the problem's grid and in
// the scheme's coordinates.
WeightedSignal solve(const EvolutionaryProblem& problem,
                     const GalerkinScheme& scheme, const WeightedSignal& f,
                     SolveReport* report = nullptr, SolveOptions opts = {});

// z M_n(z) + A_n, the matrix the sweep factors at one frequency
Eigen::MatrixXcd assemble_symbol(const EvolutionaryProblem& problem,
                                 const GalerkinScheme& scheme, Complex z);

// Energy of u strictly before the first nonzero sample of f, relative to
// ||f||. Zero up to wrap-around and rounding when the solve is causal.
double causality_check(const WeightedSignal& u, const WeightedSignal& f);

// Solve the same sample data at two weights and compare the sample functions
// in the heavier weight's norm; the solutions agree up to wrap-around and the
// discretization floor when the theory applies. Returns the relative
// discrepancy.
double nu_independence_check(const MaterialLaw& law,
                             const GalerkinScheme& scheme,
                             const Eigen::MatrixXcd& samples, double window,
                             double eps_wrap, double nu1, double nu2,
                             int jobs = 0);

}  // namespace evospec
