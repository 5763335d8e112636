#include "evospec/spatial_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "evospec/quadrature.hpp"

namespace evospec {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const Complex kMinusI(0.0, -1.0);
const Complex kPlusI(0.0, 1.0);

std::vector<double> boundary_samples() {
  return {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0};
}

}  // namespace

std::vector<AnalyticFn> SpatialOperator::apply(
    const std::vector<AnalyticFn>& field) const {
  if (field.size() != static_cast<std::size_t>(components())) {
    throw std::invalid_argument("SpatialOperator::apply: wrong component count");
  }
  switch (instance_) {
    case Instance::MixedBc1d:
    case Instance::Periodic1d:
      // A (theta, q) = (q', theta')
      return {field[1].dx(), field[0].dx()};
    case Instance::DirichletSquare2d:
      // A (theta, q) = (div q, grad theta)
      return {field[1].dx() + field[2].dy(), field[0].dx(), field[0].dy()};
  }
  throw std::logic_error("SpatialOperator::apply: unknown instance");
}

double SpatialOperator::boundary_defect(
    const std::vector<AnalyticFn>& field) const {
  const std::vector<double> xs = boundary_samples();
  double worst = 0.0;
  switch (instance_) {
    case Instance::MixedBc1d:
      worst = std::max(std::abs(field[0].eval(0.0)),
                       std::abs(field[1].eval(1.0)));
      break;
    case Instance::Periodic1d:
      for (const AnalyticFn& f : field) {
        worst = std::max(worst, std::abs(f.eval(0.0) - f.eval(1.0)));
      }
      break;
    case Instance::DirichletSquare2d:
      for (double s : xs) {
        worst = std::max(worst, std::abs(field[0].eval(s, 0.0)));
        worst = std::max(worst, std::abs(field[0].eval(s, 1.0)));
        worst = std::max(worst, std::abs(field[0].eval(0.0, s)));
        worst = std::max(worst, std::abs(field[0].eval(1.0, s)));
      }
      break;
  }
  return worst;
}

std::shared_ptr<const SpatialOperator> SpatialOperator::mixed_bc_1d(
    std::size_t max_pairs) {
  auto op = std::shared_ptr<SpatialOperator>(new SpatialOperator());
  op->name_ = "mixed_bc_1d";
  op->instance_ = Instance::MixedBc1d;
  op->dims_ = 1;
  op->m_theta_ = 1;
  op->m_q_ = 1;
  // theta vanishes at x = 0, q at x = 1; no kernel
  for (std::size_t k = 0; k < max_pairs; ++k) {
    const double mu = (static_cast<double>(k) + 0.5) * kPi;
    const AnalyticFn theta = AnalyticFn::sin_w(mu);
    const AnalyticFn q = AnalyticFn::cos_w(mu);
    Mode plus;
    plus.mu = mu;
    plus.pair = static_cast<int>(k);
    plus.sign = +1;
    plus.components = {theta, q.scaled(kMinusI)};
    Mode minus;
    minus.mu = -mu;
    minus.pair = static_cast<int>(k);
    minus.sign = -1;
    minus.components = {theta, q.scaled(kPlusI)};
    op->pairs_.push_back(std::move(plus));
    op->pairs_.push_back(std::move(minus));
  }
  return op;
}

std::shared_ptr<const SpatialOperator> SpatialOperator::periodic_1d(
    std::size_t max_pairs) {
  auto op = std::shared_ptr<SpatialOperator>(new SpatialOperator());
  op->name_ = "periodic_1d";
  op->instance_ = Instance::Periodic1d;
  op->dims_ = 1;
  op->m_theta_ = 1;
  op->m_q_ = 1;

  Mode ker_theta;
  ker_theta.components = {AnalyticFn::constant(1.0), AnalyticFn::zero()};
  Mode ker_q;
  ker_q.components = {AnalyticFn::zero(), AnalyticFn::constant(1.0)};
  op->kernel_.push_back(std::move(ker_theta));
  op->kernel_.push_back(std::move(ker_q));

  // two pairs per frequency level, one from each rotation direction
  for (std::size_t level = 1; op->pairs_.size() < 2 * max_pairs; ++level) {
    const double w = 2.0 * kPi * static_cast<double>(level);
    for (int dir = 0; dir < 2 && op->pairs_.size() < 2 * max_pairs; ++dir) {
      const AnalyticFn base =
          AnalyticFn::exp_iw(dir == 0 ? w : -w).scaled(kInvSqrt2);
      // (e, s e) with s = +1 carries mu = w for dir 0 and mu = -w for dir 1
      const double sign_of_plus = dir == 0 ? 1.0 : -1.0;
      Mode plus;
      plus.mu = w;
      plus.pair = static_cast<int>(op->pairs_.size() / 2);
      plus.sign = +1;
      plus.components = {base, base.scaled(sign_of_plus)};
      Mode minus;
      minus.mu = -w;
      minus.pair = plus.pair;
      minus.sign = -1;
      minus.components = {base, base.scaled(-sign_of_plus)};
      op->pairs_.push_back(std::move(plus));
      op->pairs_.push_back(std::move(minus));
    }
  }
  return op;
}

std::shared_ptr<const SpatialOperator> SpatialOperator::dirichlet_square_2d(
    std::size_t max_pairs) {
  auto op = std::shared_ptr<SpatialOperator>(new SpatialOperator());
  op->name_ = "dirichlet_square_2d";
  op->instance_ = Instance::DirichletSquare2d;
  op->dims_ = 2;
  op->m_theta_ = 1;
  op->m_q_ = 2;

  // Laplace eigenlevels on the square, sorted by k^2 + l^2 with ties by k
  std::vector<std::tuple<long, long, long>> levels;
  const long kmax =
      static_cast<long>(std::ceil(std::sqrt(2.0 * static_cast<double>(
                                                      max_pairs + 1)))) +
      2;
  for (long k = 1; k <= kmax; ++k) {
    for (long l = 1; l <= kmax; ++l) {
      levels.emplace_back(k * k + l * l, k, l);
    }
  }
  std::sort(levels.begin(), levels.end());
  if (levels.size() > max_pairs) levels.resize(max_pairs);

  for (const auto& [sum, k, l] : levels) {
    (void)sum;
    const double mu = kPi * std::sqrt(static_cast<double>(k * k + l * l));
    const AnalyticFn s =
        AnalyticFn::tensor(AnalyticFn::sin_w(kPi * static_cast<double>(k)),
                           AnalyticFn::sin_w(kPi * static_cast<double>(l)))
            .scaled(2.0);
    const AnalyticFn sx = s.dx();
    const AnalyticFn sy = s.dy();

    Mode plus;
    plus.mu = mu;
    plus.pair = static_cast<int>(op->pairs_.size() / 2);
    plus.sign = +1;
    plus.components = {s.scaled(kInvSqrt2), sx.scaled(kMinusI * kInvSqrt2 / mu),
                       sy.scaled(kMinusI * kInvSqrt2 / mu)};
    Mode minus;
    minus.mu = -mu;
    minus.pair = plus.pair;
    minus.sign = -1;
    minus.components = {s.scaled(kInvSqrt2), sx.scaled(kPlusI * kInvSqrt2 / mu),
                        sy.scaled(kPlusI * kInvSqrt2 / mu)};
    op->pairs_.push_back(std::move(plus));
    op->pairs_.push_back(std::move(minus));

    // divergence-free partner (0, -dy s, dx s) / mu spans the flux kernel
    Mode ker;
    ker.components = {AnalyticFn::zero(), sy.scaled(-1.0 / mu),
                      sx.scaled(1.0 / mu)};
    op->kernel_.push_back(std::move(ker));
  }
  return op;
}

std::shared_ptr<const SpatialOperator> SpatialOperator::make(
    std::string_view name, std::size_t max_pairs) {
  if (name == "mixed_bc_1d") return mixed_bc_1d(max_pairs);
  if (name == "periodic_1d") return periodic_1d(max_pairs);
  if (name == "dirichlet_square_2d") return dirichlet_square_2d(max_pairs);
  throw std::invalid_argument("SpatialOperator::make: unknown instance '" +
                              std::string(name) + "'");
}

double CatalogCheck::worst() const {
  return std::max(std::max(orthonormality_defect, quadrature_defect),
                  std::max(eigen_defect, boundary_defect));
}

namespace {

Complex quadrature_inner(const AnalyticFn& a, const AnalyticFn& b, int dims,
                         const QuadratureRule& rule) {
  Complex acc(0.0, 0.0);
  if (dims == 1) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      acc += rule.weights[i] * std::conj(a.eval(x)) * b.eval(x);
    }
    return acc;
  }
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x = rule.nodes[i];
      const double y = rule.nodes[j];
      acc += rule.weights[i] * rule.weights[j] * std::conj(a.eval(x, y)) *
             b.eval(x, y);
    }
  }
  return acc;
}

Complex field_inner(const std::vector<AnalyticFn>& a,
                    const std::vector<AnalyticFn>& b, int dims) {
  Complex acc(0.0, 0.0);
  for (std::size_t c = 0; c < a.size(); ++c) {
    acc += inner_product(a[c], b[c], dims);
  }
  return acc;
}

}  // namespace

CatalogCheck verify_catalog(const SpatialOperator& op, std::size_t max_modes,
                            std::size_t quad_points) {
  CatalogCheck check;
  const std::size_t n = std::min(max_modes, op.size());
  check.modes_checked = n;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex g =
          field_inner(op.mode(i).components, op.mode(j).components, op.dims());
      const double target = i == j ? 1.0 : 0.0;
      check.orthonormality_defect =
          std::max(check.orthonormality_defect, std::abs(g - target));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Mode& mode = op.mode(i);
    const std::vector<AnalyticFn> image = op.apply(mode.components);
    double defect_sq = 0.0;
    for (std::size_t c = 0; c < image.size(); ++c) {
      const AnalyticFn diff =
          image[c] - mode.components[c].scaled(Complex(0.0, mode.mu));
      defect_sq += inner_product(diff, diff, op.dims()).real();
    }
    check.eigen_defect =
        std::max(check.eigen_defect, std::sqrt(std::max(0.0, defect_sq)));
    check.boundary_defect =
        std::max(check.boundary_defect, op.boundary_defect(mode.components));
  }

  // re-derive a band of Gram entries with quadrature, independently of the
  // closed-form exponential integrals
  const QuadratureRule rule = gauss_legendre(quad_points);
  const std::size_t qn = std::min<std::size_t>(n, 24);
  for (std::size_t i = 0; i < qn; ++i) {
    for (std::size_t j = i; j < std::min(qn, i + 3); ++j) {
      Complex via_quadrature(0.0, 0.0);
      const auto& ci = op.mode(i).components;
      const auto& cj = op.mode(j).components;
      for (std::size_t c = 0; c < ci.size(); ++c) {
        via_quadrature += quadrature_inner(ci[c], cj[c], op.dims(), rule);
      }
      const Complex closed = field_inner(ci, cj, op.dims());
      check.quadrature_defect =
          std::max(check.quadrature_defect, std::abs(closed - via_quadrature));
    }
  }
  return check;
}

}  // namespace evospec
