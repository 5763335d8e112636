#include "evospec/galerkin.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace evospec {

GalerkinScheme GalerkinScheme::pairs(
    std::shared_ptr<const SpatialOperator> op, std::size_t n_pairs,
    std::size_t n_kernel) {
  if (!op) throw std::invalid_argument("GalerkinScheme: null operator");
  if (n_pairs > op->pair_count() || n_kernel > op->kernel_count()) {
    throw std::invalid_argument(
        "GalerkinScheme: section exceeds the catalog resolution");
  }
  if (n_pairs + n_kernel == 0) {
    throw std::invalid_argument("GalerkinScheme: empty section");
  }
  GalerkinScheme scheme;
  scheme.op_ = std::move(op);
  scheme.n_kernel_ = n_kernel;
  scheme.pair_complete_ = true;
  for (std::size_t i = 0; i < n_kernel; ++i) scheme.globals_.push_back(i);
  const std::size_t base = scheme.op_->kernel_count();
  for (std::size_t p = 0; p < n_pairs; ++p) {
    scheme.globals_.push_back(base + 2 * p);
    scheme.globals_.push_back(base + 2 * p + 1);
  }
  return scheme;
}

GalerkinScheme GalerkinScheme::single_index(
    std::shared_ptr<const SpatialOperator> op, std::size_t n_modes) {
  if (!op) throw std::invalid_argument("GalerkinScheme: null operator");
  if (n_modes < 1 || n_modes > op->size()) {
    throw std::invalid_argument(
        "GalerkinScheme: section exceeds the catalog resolution");
  }
  GalerkinScheme scheme;
  scheme.op_ = std::move(op);
  scheme.n_kernel_ = std::min(n_modes, scheme.op_->kernel_count());
  for (std::size_t i = 0; i < n_modes; ++i) scheme.globals_.push_back(i);
  const std::size_t eigen = n_modes - scheme.n_kernel_;
  scheme.pair_complete_ = eigen % 2 == 0;
  return scheme;
}

GalerkinScheme build_scheme(std::shared_ptr<const SpatialOperator> op,
                            std::size_t n_pairs, std::size_t n_kernel) {
  return GalerkinScheme::pairs(std::move(op), n_pairs, n_kernel);
}

Eigen::VectorXcd apply_P(const GalerkinScheme& scheme,
                         const Eigen::VectorXcd& full) {
  if (full.size() != static_cast<Eigen::Index>(scheme.op().size())) {
    throw std::invalid_argument("apply_P: vector is not at full resolution");
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(scheme.dim()));
  for (std::size_t i = 0; i < scheme.dim(); ++i) {
    out[static_cast<Eigen::Index>(i)] =
        full[static_cast<Eigen::Index>(scheme.global_index(i))];
  }
  return out;
}

Eigen::VectorXcd embed_J(const GalerkinScheme& scheme,
                         const Eigen::VectorXcd& local) {
  if (local.size() != static_cast<Eigen::Index>(scheme.dim())) {
    throw std::invalid_argument("embed_J: vector does not match the scheme");
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(scheme.op().size()));
  for (std::size_t i = 0; i < scheme.dim(); ++i) {
    out[static_cast<Eigen::Index>(scheme.global_index(i))] =
        local[static_cast<Eigen::Index>(i)];
  }
  return out;
}

namespace {

template <class Signal>
Signal map_columns(const GalerkinScheme& scheme, const Signal& f,
                   bool project) {
  const Eigen::Index in_dim =
      project ? static_cast<Eigen::Index>(scheme.op().size())
              : static_cast<Eigen::Index>(scheme.dim());
  const Eigen::Index out_dim =
      project ? static_cast<Eigen::Index>(scheme.dim())
              : static_cast<Eigen::Index>(scheme.op().size());
  if (f.dim() != in_dim) {
    throw std::invalid_argument("scheme mapping: wrong signal dimension");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, f.values().cols());
  for (std::size_t i = 0; i < scheme.dim(); ++i) {
    const Eigen::Index li = static_cast<Eigen::Index>(i);
    const Eigen::Index gi = static_cast<Eigen::Index>(scheme.global_index(i));
    if (project) {
      out.row(li) = f.values().row(gi);
    } else {
      out.row(gi) = f.values().row(li);
    }
  }
  return Signal(f.grid(), std::move(out));
}

}  // namespace

WeightedSignal apply_P(const GalerkinScheme& scheme, const WeightedSignal& f) {
  return map_columns(scheme, f, true);
}
WeightedSignal embed_J(const GalerkinScheme& scheme, const WeightedSignal& f) {
  return map_columns(scheme, f, false);
}
FrequencySignal apply_P(const GalerkinScheme& scheme,
                        const FrequencySignal& f) {
  return map_columns(scheme, f, true);
}
FrequencySignal embed_J(const GalerkinScheme& scheme,
                        const FrequencySignal& f) {
  return map_columns(scheme, f, false);
}

Eigen::VectorXcd project_A_diag(const GalerkinScheme& scheme) {
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(scheme.dim()));
  for (std::size_t i = 0; i < scheme.dim(); ++i) {
    diag[static_cast<Eigen::Index>(i)] = Complex(0.0, scheme.mu(i));
  }
  return diag;
}

double a_norm(const SpatialOperator& op, const Eigen::VectorXcd& full) {
  if (full.size() != static_cast<Eigen::Index>(op.size())) {
    throw std::invalid_argument("a_norm: vector is not at full resolution");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < full.size(); ++i) {
    const double mu = op.mu(static_cast<std::size_t>(i));
    acc += mu * mu * std::norm(full[i]);
  }
  return std::sqrt(acc);
}

double graph_norm(const SpatialOperator& op, const Eigen::VectorXcd& full) {
  if (full.size() != static_cast<Eigen::Index>(op.size())) {
    throw std::invalid_argument("graph_norm: vector is not at full resolution");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < full.size(); ++i) {
    const double mu = op.mu(static_cast<std::size_t>(i));
    acc += (1.0 + mu * mu) * std::norm(full[i]);
  }
  return std::sqrt(acc);
}

double graph_norm(const GalerkinScheme& scheme, const Eigen::VectorXcd& local) {
  if (local.size() != static_cast<Eigen::Index>(scheme.dim())) {
    throw std::invalid_argument("graph_norm: vector does not match the scheme");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < local.size(); ++i) {
    const double mu = scheme.mu(static_cast<std::size_t>(i));
    acc += (1.0 + mu * mu) * std::norm(local[i]);
  }
  return std::sqrt(acc);
}

ProjectedLaw::ProjectedLaw(MaterialLaw law, const GalerkinScheme& scheme)
    : law_(std::move(law)),
      n_(static_cast<Eigen::Index>(scheme.dim())),
      m_(scheme.op().components()) {
  if (law_.dim() != m_) {
    throw std::invalid_argument(
        "ProjectedLaw: law dimension does not match the operator components");
  }
  const SpatialOperator& op = scheme.op();
  for (Eigen::Index a = 0; a < m_; ++a) {
    for (Eigen::Index b = 0; b < m_; ++b) {
      Eigen::MatrixXcd gram(n_, n_);
      bool nonzero = false;
      for (Eigen::Index i = 0; i < n_; ++i) {
        const auto& ci =
            op.mode(scheme.global_index(static_cast<std::size_t>(i)))
                .components;
        for (Eigen::Index j = 0; j < n_; ++j) {
          const auto& cj =
              op.mode(scheme.global_index(static_cast<std::size_t>(j)))
                  .components;
          const Complex g = inner_product(ci[static_cast<std::size_t>(a)],
                                          cj[static_cast<std::size_t>(b)],
                                          op.dims());
          gram(i, j) = g;
          nonzero = nonzero || g != Complex(0.0, 0.0);
        }
      }
      if (nonzero) blocks_.push_back(GramBlock{a, b, std::move(gram)});
    }
  }
}

Eigen::MatrixXcd ProjectedLaw::combine(const Eigen::MatrixXcd& coeffs) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
  for (const GramBlock& block : blocks_) {
    const Complex c = coeffs(block.a, block.b);
    if (c != Complex(0.0, 0.0)) out += c * block.gram;
  }
  return out;
}

Eigen::MatrixXcd ProjectedLaw::at(Complex z) const { return combine(law_(z)); }

Eigen::MatrixXcd ProjectedLaw::project_constant(
    const Eigen::MatrixXcd& coeffs) const {
  if (coeffs.rows() != m_ || coeffs.cols() != m_) {
    throw std::invalid_argument(
        "ProjectedLaw: coefficient matrix has the wrong dimension");
  }
  return combine(coeffs);
}

Eigen::MatrixXcd ProjectedLaw::z_times(Complex z) const {
  return combine(law_.z_times(z));
}

Eigen::MatrixXcd project_law(const MaterialLaw& law,
                             const GalerkinScheme& scheme, Complex z) {
  return ProjectedLaw(law, scheme).at(z);
}

CoercivityReport coercivity_lower_bound(const MaterialLaw& law,
                                        const GalerkinScheme& scheme,
                                        double nu,
                                        std::span<const Complex> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("coercivity_lower_bound: no samples");
  }
  if (!(nu > law.nu0())) {
    throw std::invalid_argument(
        "coercivity_lower_bound: nu must exceed the law's abscissa");
  }
  const ProjectedLaw projected(law, scheme);
  CoercivityReport report;
  report.nu = nu;
  report.num_samples = samples.size();
  bool first = true;
  for (Complex z : samples) {
    if (z.real() != nu) {
      throw std::invalid_argument(
          "coercivity_lower_bound: sample off the line Re z = nu");
    }
    const Eigen::MatrixXcd b = projected.z_times(z);
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

}  // namespace evospec
