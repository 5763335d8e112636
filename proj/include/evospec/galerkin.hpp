#pragma once

#include <Eigen/Core>

#include <memory>
#include <span>
#include <vector>

#include "evospec/material_law.hpp"
#include "evospec/signal.hpp"
#include "evospec/spatial_operator.hpp"

namespace evospec {

// A finite section of the mode enumeration: a prefix of the kernel modes plus
// a prefix of the eigenmode pairs. The pair-complete constructor keeps both
// partners of every included pair, which makes the projected symbol exact on
// its own range; the single-index constructor can cut a pair in half and
// exists to study what that costs.
class GalerkinScheme {
 public:
  static GalerkinScheme pairs(std::shared_ptr<const SpatialOperator> op,
                              std::size_t n_pairs, std::size_t n_kernel);
  static GalerkinScheme single_index(std::shared_ptr<const SpatialOperator> op,
                                     std::size_t n_modes);

  const SpatialOperator& op() const { return *op_; }
  const std::shared_ptr<const SpatialOperator>& op_ptr() const { return op_; }

  std::size_t dim() const { return globals_.size(); }
  std::size_t n_kernel() const { return n_kernel_; }
  bool pair_complete() const { return pair_complete_; }

  // enumeration index behind local slot i
  std::size_t global_index(std::size_t i) const { return globals_[i]; }
  double mu(std::size_t i) const { return op_->mu(globals_[i]); }
  const std::vector<std::size_t>& globals() const { return globals_; }

 private:
  GalerkinScheme() = default;

  std::shared_ptr<const SpatialOperator> op_;
  std::vector<std::size_t> globals_;
  std::size_t n_kernel_ = 0;
  bool pair_complete_ = true;
};

GalerkinScheme build_scheme(std::shared_ptr<const SpatialOperator> op,
                            std::size_t n_pairs, std::size_t n_kernel);

// P_n: coefficient truncation from the full enumeration to the scheme
Eigen::VectorXcd apply_P(const GalerkinScheme& scheme,
                         const Eigen::VectorXcd& full);
// J_n: zero-padding embedding back into the full enumeration
Eigen::VectorXcd embed_J(const GalerkinScheme& scheme,
                         const Eigen::VectorXcd& local);

WeightedSignal apply_P(const GalerkinScheme& scheme, const WeightedSignal& f);
WeightedSignal embed_J(const GalerkinScheme& scheme, const WeightedSignal& f);
FrequencySignal apply_P(const GalerkinScheme& scheme, const FrequencySignal& f);
FrequencySignal embed_J(const GalerkinScheme& scheme, const FrequencySignal& f);

// A_n = P_n A J_n; diagonal in the mode basis for every section
Eigen::VectorXcd project_A_diag(const GalerkinScheme& scheme);

// norms of coefficient vectors over the full enumeration
double a_norm(const SpatialOperator& op, const Eigen::VectorXcd& full);
double graph_norm(const SpatialOperator& op, const Eigen::VectorXcd& full);
// and over a scheme's local coordinates
double graph_norm(const GalerkinScheme& scheme, const Eigen::VectorXcd& local);

// Projected material law M_n(z) = P_n M(z) J_n. The component Grams are
// z-independent and cached, so repeated evaluation along a frequency grid
// costs one m x m law evaluation plus a few axpys per z.
class ProjectedLaw {
 public:
  ProjectedLaw(MaterialLaw law, const GalerkinScheme& scheme);

  Eigen::Index dim() const { return n_; }
  const MaterialLaw& law() const { return law_; }

  Eigen::MatrixXcd at(Complex z) const;       // M_n(z)
  Eigen::MatrixXcd z_times(Complex z) const;  // (z M)_n (z), finite at z = 0

  // projection of a constant coefficient matrix through the cached Grams
  Eigen::MatrixXcd project_constant(const Eigen::MatrixXcd& coeffs) const;

 private:
  Eigen::MatrixXcd combine(const Eigen::MatrixXcd& coeffs) const;

  MaterialLaw law_;
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  // nonzero component Gram blocks, as (a, b, G_ab)
  struct GramBlock {
    Eigen::Index a, b;
    Eigen::MatrixXcd gram;
  };
  std::vector<GramBlock> blocks_;
};

Eigen::MatrixXcd project_law(const MaterialLaw& law,
                             const GalerkinScheme& scheme, Complex z);

// accretivity of the projected symbol over a sample set on Re z = nu
CoercivityReport coercivity_lower_bound(const MaterialLaw& law,
                                        const GalerkinScheme& scheme,
                                        double nu,
                                        std::span<const Complex> samples);

}  // namespace evospec
