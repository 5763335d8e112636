#include "evospec/sweep.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

#include "evospec/parallel.hpp"

namespace evospec {

DenseSymbol::DenseSymbol(const MaterialLaw& law, const GalerkinScheme& scheme)
    : projected_(law, scheme), a_diag_(project_A_diag(scheme)) {}

Eigen::MatrixXcd DenseSymbol::at(Complex z) const {
  Eigen::MatrixXcd k = projected_.z_times(z);
  k.diagonal() += a_diag_;
  return k;
}

namespace {

// the matrix must be diagonal with a constant value on [begin, end)
bool block_scalar(const Eigen::MatrixXcd& m, Eigen::Index begin,
                  Eigen::Index end, Complex& value) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  value = m(begin, begin);
  for (Eigen::Index i = begin; i < end; ++i) {
    if (m(i, i) != value) return false;
  }
  return true;
}

bool component_zero(const AnalyticFn& f) { return f.is_zero(); }

}  // namespace

std::optional<BlockSymbol> BlockSymbol::try_build(
    const MaterialLaw& law, const GalerkinScheme& scheme) {
  if (law.kind() != LawKind::RationalBlock) return std::nullopt;
  const SpatialOperator& op = scheme.op();
  const Eigen::Index mt = op.theta_components();
  const Eigen::Index m = op.components();
  if (law.dim() != m) return std::nullopt;

  BlockSymbol sym;
  Complex a0, b0, a1, b1;
  if (!block_scalar(law.m0(), 0, mt, a0) ||
      !block_scalar(law.m0(), mt, m, b0) ||
      !block_scalar(law.m1(), 0, mt, a1) ||
      !block_scalar(law.m1(), mt, m, b1)) {
    return std::nullopt;
  }
  sym.a0_ = a0;
  sym.a1_ = a1;
  sym.b0_ = b0;
  sym.b1_ = b1;

  const std::size_t n = scheme.dim();
  std::size_t i = 0;
  while (i < n) {
    const Mode& mode = op.mode(scheme.global_index(i));
    if (mode.pair < 0) {
      // kernel mode: must live entirely in one component block
      bool theta_zero = true;
      bool q_zero = true;
      for (Eigen::Index c = 0; c < m; ++c) {
        if (component_zero(mode.components[static_cast<std::size_t>(c)])) {
          continue;
        }
        (c < mt ? theta_zero : q_zero) = false;
      }
      if (theta_zero == q_zero) return std::nullopt;
      sym.slots_.push_back(
          Slot{q_zero ? SlotKind::KernelTheta : SlotKind::KernelQ, 0.0});
      ++i;
      continue;
    }
    // eigenmode: pair slot if the - partner follows, half pair otherwise
    if (i + 1 < n) {
      const Mode& next = op.mode(scheme.global_index(i + 1));
      if (next.pair == mode.pair && mode.sign == +1 && next.sign == -1) {
        sym.slots_.push_back(Slot{SlotKind::Pair, mode.mu});
        i += 2;
        continue;
      }
    }
    sym.slots_.push_back(Slot{SlotKind::HalfPair, mode.mu});
    ++i;
  }
  sym.size_ = n;
  return sym;
}

void BlockSymbol::apply(Complex z, const Eigen::VectorXcd& x,
                        Eigen::VectorXcd& out) const {
  const Complex za = a0_ * z + a1_;
  const Complex zb = b0_ * z + b1_;
  const Complex p = 0.5 * (za + zb);
  const Complex q = 0.5 * (za - zb);
  out.resize(x.size());
  Eigen::Index i = 0;
  for (const Slot& slot : slots_) {
    switch (slot.kind) {
      case SlotKind::KernelTheta:
        out[i] = za * x[i];
        ++i;
        break;
      case SlotKind::KernelQ:
        out[i] = zb * x[i];
        ++i;
        break;
      case SlotKind::Pair: {
        const Complex imu(0.0, slot.mu);
        out[i] = (p + imu) * x[i] + q * x[i + 1];
        out[i + 1] = q * x[i] + (p - imu) * x[i + 1];
        i += 2;
        break;
      }
      case SlotKind::HalfPair:
        out[i] = (p + Complex(0.0, slot.mu)) * x[i];
        ++i;
        break;
    }
  }
}

void BlockSymbol::solve(Complex z, const Eigen::VectorXcd& rhs,
                        Eigen::VectorXcd& out) const {
  const Complex za = a0_ * z + a1_;
  const Complex zb = b0_ * z + b1_;
  const Complex p = 0.5 * (za + zb);
  const Complex q = 0.5 * (za - zb);
  out.resize(rhs.size());
  Eigen::Index i = 0;
  for (const Slot& slot : slots_) {
    switch (slot.kind) {
      case SlotKind::KernelTheta:
        out[i] = rhs[i] / za;
        ++i;
        break;
      case SlotKind::KernelQ:
        out[i] = rhs[i] / zb;
        ++i;
        break;
      case SlotKind::Pair: {
        const Complex imu(0.0, slot.mu);
        const Complex det = za * zb + slot.mu * slot.mu;
        out[i] = ((p - imu) * rhs[i] - q * rhs[i + 1]) / det;
        out[i + 1] = (-q * rhs[i] + (p + imu) * rhs[i + 1]) / det;
        i += 2;
        break;
      }
      case SlotKind::HalfPair:
        out[i] = rhs[i] / (p + Complex(0.0, slot.mu));
        ++i;
        break;
    }
  }
}

void sweep_solve_serial(const DenseSymbol& symbol, std::span<const Complex> zs,
                        const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                        Eigen::VectorXd& residual_sq) {
  const Eigen::Index cols = fhat.cols();
  if (static_cast<std::size_t>(cols) != zs.size()) {
    throw std::invalid_argument("sweep: column count does not match zs");
  }
  uhat.resize(fhat.rows(), cols);
  residual_sq.resize(cols);
  for (Eigen::Index m = 0; m < cols; ++m) {
    const Eigen::MatrixXcd k = symbol.at(zs[static_cast<std::size_t>(m)]);
    const Eigen::VectorXcd u = k.partialPivLu().solve(fhat.col(m));
    uhat.col(m) = u;
    residual_sq[m] = (k * u - fhat.col(m)).squaredNorm();
  }
}

void sweep_solve_parallel(const BlockSymbol& symbol,
                          std::span<const Complex> zs,
                          const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                          Eigen::VectorXd& residual_sq, int jobs) {
  const Eigen::Index cols = fhat.cols();
  if (static_cast<std::size_t>(cols) != zs.size()) {
    throw std::invalid_argument("sweep: column count does not match zs");
  }
  uhat.resize(fhat.rows(), cols);
  residual_sq.resize(cols);
  parallel_for(static_cast<std::size_t>(cols), jobs, [&](std::size_t m) {
    const Eigen::Index col = static_cast<Eigen::Index>(m);
    Eigen::VectorXcd u, r;
    symbol.solve(zs[m], fhat.col(col), u);
    symbol.apply(zs[m], u, r);
    uhat.col(col) = u;
    residual_sq[col] = (r - fhat.col(col)).squaredNorm();
  });
}

void sweep_solve_parallel(const DenseSymbol& symbol,
                          std::span<const Complex> zs,
                          const Eigen::MatrixXcd& fhat, Eigen::MatrixXcd& uhat,
                          Eigen::VectorXd& residual_sq, int jobs) {
  const Eigen::Index cols = fhat.cols();
  if (static_cast<std::size_t>(cols) != zs.size()) {
    throw std::invalid_argument("sweep: column count does not match zs");
  }
  uhat.resize(fhat.rows(), cols);
  residual_sq.resize(cols);
  parallel_for(static_cast<std::size_t>(cols), jobs, [&](std::size_t m) {
    const Eigen::Index col = static_cast<Eigen::Index>(m);
    const Eigen::MatrixXcd k = symbol.at(zs[m]);
    const Eigen::VectorXcd u = k.partialPivLu().solve(fhat.col(col));
    uhat.col(col) = u;
    residual_sq[col] = (k * u - fhat.col(col)).squaredNorm();
  });
}

}  // namespace evospec
