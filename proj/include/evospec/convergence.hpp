#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evospec/forcing.hpp"
#include "evospec/solver.hpp"

namespace evospec {

// One row of a convergence study. err columns compare the section solution
// against the reference; g_n and h_n are the defect functionals (projection
// tails plus the strong commutation defect) that drive the a priori bounds;
// pass records err <= bound for the row.
struct ConvergenceRow {
  std::size_t n = 0;
  double err_h = 0.0;
  double err_graph = 0.0;
  double g_n = 0.0;
  double h_n = 0.0;
  double bound_graph = 0.0;
  double bound_h = 0.0;
  bool pass = false;
};

struct ConvergenceTable {
  std::string problem;
  std::string scheme;
  std::uint64_t seed = 0;
  double c_used = 0.0;
  std::vector<ConvergenceRow> rows;

  bool all_pass() const;
};

// Dense stand-in for the continuous theory: a random skew-Hermitian A, a
// random accretive T with Re T >= c and ||T|| <= d, and a random unitary whose
// leading columns span the approximating sections. Everything the theorems
// bound can be measured exactly here.
struct OracleInstance {
  Eigen::MatrixXcd skew;       // A = -A^*
  Eigen::MatrixXcd accretive;  // T, Re <Tx,x> >= c |x|^2, ||T|| <= d
  Eigen::MatrixXcd basis;      // unitary; H_n = span of the first n columns
  double c = 0.0;
  double d = 0.0;
  std::uint64_t seed = 0;
};

OracleInstance make_oracle_instance(Eigen::Index m, double c, double d,
                                    std::uint64_t seed);

// Extra facts the table rows do not carry.
struct OracleOutcome {
  ConvergenceTable table;
  bool invertible = true;       // every section symbol was solvable
  double resolvent_sup = 0.0;   // max_n || (T_n + A_n)^{-1} ||_{H -> dom(A_n)}
  double resolvent_limit = 0.0; // sqrt(1 + c^2 + d^2) / c
  double j_sup = 0.0;           // max_n || J_n ||_{dom(A_n) -> dom(A)}
  double err_at_full = 0.0;     // recovery error of the n = m section
};

// Solve (T + A) u = f, then every section (T_n + A_n) u_n = P_n f, and verify
// the uniform resolvent bound and the two a priori error bounds per section.
OracleOutcome oracle_resolvent_convergence(const OracleInstance& inst,
                                           const Eigen::VectorXcd& f,
                                           std::span<const std::size_t> ns);

// || P_n (z M + A) u - (z M_n + A_n) P_n u || for a full-resolution modal u;
// measures how far the section is from commuting with the symbol. Returns the
// H-norm defect and the graph-norm tail of u as a pair.
std::pair<double, double> strong_convergence_defect(
    const MaterialLaw& law, const GalerkinScheme& scheme, Complex z,
    const Eigen::VectorXcd& u_full);

// Galerkin study on a catalog problem: solve at full resolution, re-solve on
// nested pair sections, and record errors against the a priori bounds. The
// forcing must be at full resolution.
ConvergenceTable convergence_sweep(const EvolutionaryProblem& problem,
                                   const WeightedSignal& f_full,
                                   std::span<const std::size_t> pair_counts,
                                   int jobs = 0);

}  // namespace evospec
