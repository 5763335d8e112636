#pragma once

#include <Eigen/Core>

#include <functional>
#include <span>
#include <vector>

#include "evospec/time_grid.hpp"
#include "evospec/types.hpp"

namespace evospec {

enum class LawKind { RationalBlock, Generic };

// Operator-valued symbol z -> M(z) acting on the m-dimensional coefficient
// space, defined and bounded on the half-plane Re z > nu0. The equation is
// well posed at weight nu when z M(z) is uniformly strictly accretive on the
// line Re z = nu; that constant is estimated by coercivity_lower_bound below.
class MaterialLaw {
 public:
  // M(z) = m0 + z^{-1} m1, holomorphic away from z = 0
  static MaterialLaw rational_block(Eigen::MatrixXcd m0, Eigen::MatrixXcd m1);

  // arbitrary callable; the caller asserts holomorphy on Re z > nu0
  static MaterialLaw generic(std::function<Eigen::MatrixXcd(Complex)> eval,
                             Eigen::Index dim, double nu0);

  Eigen::Index dim() const { return dim_; }
  double nu0() const { return nu0_; }
  LawKind kind() const { return kind_; }

  Eigen::MatrixXcd operator()(Complex z) const;

  // z M(z); for the rational block this is z m0 + m1, defined at z = 0 too
  Eigen::MatrixXcd z_times(Complex z) const;

  // rational-block coefficients; only valid when kind() == RationalBlock
  const Eigen::MatrixXcd& m0() const;
  const Eigen::MatrixXcd& m1() const;

 private:
  MaterialLaw() = default;

  LawKind kind_ = LawKind::Generic;
  Eigen::Index dim_ = 0;
  double nu0_ = 0.0;
  Eigen::MatrixXcd m0_, m1_;
  std::function<Eigen::MatrixXcd(Complex)> eval_;
};

// Heat material law on a split coefficient space: identity on the first
// m_theta components, z^{-1} times identity on the remaining m_q. Models
// (theta, q) with d/dt theta + div q = f, q = -grad theta.
MaterialLaw heat_law(Eigen::Index m_theta, Eigen::Index m_q);

struct CoercivityReport {
  double c_estimate = 0.0;  // min over samples of lambda_min Re z M(z)
  double d_max = 0.0;       // max over samples of ||z M(z)||
  double nu = 0.0;
  std::size_t num_samples = 0;

  bool coercive() const { return c_estimate > 0.0; }
};

// Evaluate the accretivity constant of z M(z) over a sample set on the line
// Re z = nu. Every sample must satisfy Re z == nu and nu > nu0 of the law.
// Re z M(z) means the Hermitian part (B + B^*) / 2.
CoercivityReport coercivity_lower_bound(const MaterialLaw& law, double nu,
                                        std::span<const Complex> samples);

// Sampling plan used by the solver: all grid frequencies. The minimum over
// these is the constant that actually controls the discrete solve.
std::vector<Complex> coercivity_samples(const TimeGrid& grid);

}  // namespace evospec
