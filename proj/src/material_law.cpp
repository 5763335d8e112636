#include "evospec/material_law.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>
#include <utility>

namespace evospec {

MaterialLaw MaterialLaw::rational_block(Eigen::MatrixXcd m0,
                                        Eigen::MatrixXcd m1) {
  if (m0.rows() != m0.cols() || m1.rows() != m1.cols() ||
      m0.rows() != m1.rows() || m0.rows() < 1) {
    throw std::invalid_argument(
        "MaterialLaw: m0 and m1 must be square with matching dimension");
  }
  MaterialLaw law;
  law.kind_ = LawKind::RationalBlock;
  law.dim_ = m0.rows();
  law.nu0_ = 0.0;
  law.m0_ = std::move(m0);
  law.m1_ = std::move(m1);
  return law;
}

MaterialLaw MaterialLaw::generic(std::function<Eigen::MatrixXcd(Complex)> eval,
                                 Eigen::Index dim, double nu0) {
  if (!eval) throw std::invalid_argument("MaterialLaw: empty callable");
  if (dim < 1) throw std::invalid_argument("MaterialLaw: dim must be >= 1");
  MaterialLaw law;
  law.kind_ = LawKind::Generic;
  law.dim_ = dim;
  law.nu0_ = nu0;
  law.eval_ = std::move(eval);
  return law;
}

Eigen::MatrixXcd MaterialLaw::operator()(Complex z) const {
  if (kind_ == LawKind::RationalBlock) {
    if (z == Complex(0.0, 0.0)) {
      throw std::invalid_argument("MaterialLaw: rational block has a pole at 0");
    }
    return m0_ + m1_ / z;
  }
  Eigen::MatrixXcd m = eval_(z);
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw std::runtime_error("MaterialLaw: callable returned wrong dimension");
  }
  return m;
}

Eigen::MatrixXcd MaterialLaw::z_times(Complex z) const {
  if (kind_ == LawKind::RationalBlock) return z * m0_ + m1_;
  return z * (*this)(z);
}

const Eigen::MatrixXcd& MaterialLaw::m0() const {
  if (kind_ != LawKind::RationalBlock) {
    throw std::logic_error("MaterialLaw: m0() requires a rational block law");
  }
  return m0_;
}

const Eigen::MatrixXcd& MaterialLaw::m1() const {
  if (kind_ != LawKind::RationalBlock) {
    throw std::logic_error("MaterialLaw: m1() requires a rational block law");
  }
  return m1_;
}

MaterialLaw heat_law(Eigen::Index m_theta, Eigen::Index m_q) {
  if (m_theta < 1 || m_q < 1) {
    throw std::invalid_argument("heat_law: both splits must be nonempty");
  }
  const Eigen::Index m = m_theta + m_q;
  Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(m, m);
  m0.topLeftCorner(m_theta, m_theta).setIdentity();
  m1.bottomRightCorner(m_q, m_q).setIdentity();
  return MaterialLaw::rational_block(std::move(m0), std::move(m1));
}

CoercivityReport coercivity_lower_bound(const MaterialLaw& law, double nu,
                                        std::span<const Complex> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("coercivity_lower_bound: no samples");
  }
  if (!(nu > law.nu0())) {
    throw std::invalid_argument(
        "coercivity_lower_bound: nu must exceed the law's abscissa");
  }
  CoercivityReport report;
  report.nu = nu;
  report.num_samples = samples.size();
  bool first = true;
  for (Complex z : samples) {
    if (z.real() != nu) {
      throw std::invalid_argument(
          "coercivity_lower_bound: sample off the line Re z = nu");
    }
    const Eigen::MatrixXcd b = law.z_times(z);
    const Eigen::MatrixXcd herm = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = b.operatorNorm();
    if (first) {
      report.c_estimate = lo;
      report.d_max = hi;
      first = false;
    } else {
      report.c_estimate = std::min(report.c_estimate, lo);
      report.d_max = std::max(report.d_max, hi);
    }
  }
  return report;
}

std::vector<Complex> coercivity_samples(const TimeGrid& grid) {
  std::vector<Complex> zs(grid.samples());
  for (std::size_t m = 0; m < zs.size(); ++m) zs[m] = grid.z_at(m);
  return zs;
}

}  // namespace evospec
