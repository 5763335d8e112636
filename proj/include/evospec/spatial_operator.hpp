#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "evospec/modes.hpp"

namespace evospec {

// One orthonormal basis field of the spatial operator. Kernel modes satisfy
// A phi = 0 and carry mu == 0; eigenmodes come in pairs with A phi = +-i mu phi
// and mu > 0 for the + partner, mu < 0 for the - partner.
struct Mode {
  double mu = 0.0;
  int pair = -1;  // pair ordinal, -1 for kernel modes
  int sign = 0;   // +1 / -1 inside a pair, 0 for kernel modes
  std::vector<AnalyticFn> components;
};

// Skew-selfadjoint first-order block operator A = [[0, D], [D*, 0]] on a
// product of scalar fields, realised through an explicit eigensystem. The
// catalog stores the modes up to a requested resolution; everything downstream
// (projections, symbols, norms) works on the resulting coefficient sequences.
//
// Global enumeration: kernel modes first, then the pairs in catalog order with
// the + partner before the - partner.
class SpatialOperator {
 public:
  enum class Instance { MixedBc1d, Periodic1d, DirichletSquare2d };

  const std::string& name() const { return name_; }
  Instance instance() const { return instance_; }
  int dims() const { return dims_; }

  // coefficient components per field value; the leading block belongs to the
  // scalar (theta) part, the rest to the flux (q) part
  Eigen::Index components() const { return m_theta_ + m_q_; }
  Eigen::Index theta_components() const { return m_theta_; }
  Eigen::Index q_components() const { return m_q_; }

  std::size_t kernel_count() const { return kernel_.size(); }
  std::size_t pair_count() const { return pairs_.size() / 2; }
  std::size_t size() const { return kernel_.size() + pairs_.size(); }

  const Mode& kernel_mode(std::size_t i) const { return kernel_[i]; }
  // sign_index 0 is the + partner, 1 the - partner
  const Mode& pair_mode(std::size_t p, int sign_index) const {
    return pairs_[2 * p + static_cast<std::size_t>(sign_index)];
  }

  const Mode& mode(std::size_t global) const {
    return global < kernel_.size() ? kernel_[global]
                                   : pairs_[global - kernel_.size()];
  }
  double mu(std::size_t global) const { return mode(global).mu; }

  // A applied to an analytic field, for independent cross-checks
  std::vector<AnalyticFn> apply(const std::vector<AnalyticFn>& field) const;

  // worst pointwise violation of the instance's boundary or periodicity
  // conditions over a fixed sample set
  double boundary_defect(const std::vector<AnalyticFn>& field) const;

  static std::shared_ptr<const SpatialOperator> mixed_bc_1d(
      std::size_t max_pairs);
  static std::shared_ptr<const SpatialOperator> periodic_1d(
      std::size_t max_pairs);
  static std::shared_ptr<const SpatialOperator> dirichlet_square_2d(
      std::size_t max_pairs);

  // name in {"mixed_bc_1d", "periodic_1d", "dirichlet_square_2d"}
  static std::shared_ptr<const SpatialOperator> make(std::string_view name,
                                                     std::size_t max_pairs);

 private:
  SpatialOperator() = default;

  std::string name_;
  Instance instance_ = Instance::MixedBc1d;
  int dims_ = 1;
  Eigen::Index m_theta_ = 1;
  Eigen::Index m_q_ = 1;
  std::vector<Mode> kernel_;
  std::vector<Mode> pairs_;  // flattened (+, -) per pair
};

struct CatalogCheck {
  double orthonormality_defect = 0.0;  // closed-form Gram vs identity
  double quadrature_defect = 0.0;      // closed form vs Gauss-Legendre
  double eigen_defect = 0.0;           // || A phi - i mu phi ||_{L2}
  double boundary_defect = 0.0;
  std::size_t modes_checked = 0;

  double worst() const;
};

// Cross-checks the catalog against independent machinery: full pairwise Gram
// from the closed-form integrals, a quadrature re-computation of a subset of
// entries, the eigen relation via the analytic derivative, and the boundary
// conditions via point evaluation.
CatalogCheck verify_catalog(const SpatialOperator& op, std::size_t max_modes,
                            std::size_t quad_points = 48);

}  // namespace evospec
