#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

#include "evospec/galerkin.hpp"

namespace evospec {

// Frequency sweep kernels: factor and solve (z M_n(z) + A_n) u = fhat column
// by column along the grid. Two paths exist. The dense path assembles the
// projected symbol per frequency and runs a pivoted LU; it is the reference
// the other path is tested against. The block path exploits the catalog
// structure, where the symbol decomposes into 1x1 kernel blocks and 2x2 pair
// blocks, and is the one worth parallelising.

class DenseSymbol {
 public:
  DenseSymbol(const MaterialLaw& law, const GalerkinScheme& scheme);

  Eigen::Index dim() const { return a_diag_.size(); }
  Eigen::MatrixXcd at(Complex z) const;  // z M_n(z) + A_n

 private:
  ProjectedLaw projected_;
  Eigen::VectorXcd a_diag_;
};

// Block-scalar view of a rational law over a catalog scheme: z M(z) acts as
// alpha(z) = a0 z + a1 on the theta components and beta(z) = b0 z + b1 on the
// flux components. Available when the law's coefficient matrices are scalar
// on each block and every mode is pure theta, pure flux, or a +- pair.
class BlockSymbol {
 public:
  static std::optional<BlockSymbol> try_build(const MaterialLaw& law,
                                              const GalerkinScheme& scheme);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(size_); }

  void apply(Complex z, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const;
  void solve(Complex z, const Eigen::VectorXcd& rhs,
             Eigen::VectorXcd& out) const;

 private:
  BlockSymbol() = default;

  enum class SlotKind { KernelTheta, KernelQ, Pair, HalfPair };
  struct Slot {
    SlotKind kind;
    double mu = 0.0;  // signed for HalfPair, the + value for Pair
  };

  Complex a0_, a1_, b0_, b1_;  // z alpha = a0 z + a1, z beta = b0 z + b1
  std::size_t size_ = 0;
  std::vector<Slot> slots_;
};

// Serial reference sweep over all columns. residual_sq[m] is
// || K(z_m) u_m - fhat_m ||^2 recomputed after the solve.
void sweep_solve_serial(const DenseSymbol& symbol, std::span<const Complex> zs,
                        const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                        Eigen::VectorXd& residual_sq);

// OpenMP sweeps. Columns are independent, so the loop is embarrassingly
// parallel; each iteration writes only its own column and residual slot.
void sweep_solve_parallel(const BlockSymbol& symbol,
                          std::span<const Complex> zs,
                          const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                          Eigen::VectorXd& residual_sq, int jobs);
void sweep_solve_parallel(const DenseSymbol& symbol,
                          std::span<const Complex> zs,
                          const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                          Eigen::VectorXd& residual_sq, int jobs);

}  // namespace evospec
