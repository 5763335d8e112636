#include <doctest.h>

#include <cmath>

#include "evospec/convergence.hpp"
#include "evospec/galerkin.hpp"
#include "evospec/quadrature.hpp"
#include "evospec/rng.hpp"

using namespace evospec;

namespace {

Eigen::VectorXcd random_vector(Rng& rng, Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal_complex();
  return v;
}

// quadrature re-computation of <phi_i, M phi_j>, independent of the cached
// closed-form grams
Complex quad_law_entry(const SpatialOperator& op, const Eigen::MatrixXcd& m,
                       std::size_t gi, std::size_t gj,
                       const QuadratureRule& rule) {
  const auto& ci = op.mode(gi).components;
  const auto& cj = op.mode(gj).components;
  Complex acc(0.0, 0.0);
  const auto accumulate = [&](double x, double y, double w) {
    for (Eigen::Index a = 0; a < op.components(); ++a) {
      Complex mv(0.0, 0.0);
      for (Eigen::Index b = 0; b < op.components(); ++b) {
        mv += m(a, b) * cj[static_cast<std::size_t>(b)].eval(x, y);
      }
      acc += w * std::conj(ci[static_cast<std::size_t>(a)].eval(x, y)) * mv;
    }
  };
  if (op.dims() == 1) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      accumulate(rule.nodes[i], 0.0, rule.weights[i]);
    }
  } else {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        accumulate(rule.nodes[i], rule.nodes[j],
                   rule.weights[i] * rule.weights[j]);
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("schemes select kernel and pair prefixes") {
  const auto op = SpatialOperator::periodic_1d(6);
  const GalerkinScheme scheme = build_scheme(op, 3, 2);
  CHECK(scheme.dim() == 8);
  CHECK(scheme.n_kernel() == 2);
  CHECK(scheme.pair_complete());
  CHECK(scheme.global_index(0) == 0);
  CHECK(scheme.global_index(2) == 2);
  CHECK(scheme.mu(2) == doctest::Approx(2.0 * kPi));
  CHECK(scheme.mu(3) == doctest::Approx(-2.0 * kPi));

  CHECK_THROWS_AS(build_scheme(op, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(op, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(op, 0, 0), std::invalid_argument);

  const GalerkinScheme half = GalerkinScheme::single_index(op, 5);
  CHECK(half.dim() == 5);
  CHECK(half.n_kernel() == 2);
  CHECK(!half.pair_complete());
  const GalerkinScheme even = GalerkinScheme::single_index(op, 6);
  CHECK(even.pair_complete());
}

TEST_CASE("P and J are truncation and zero padding") {
  const auto op = SpatialOperator::mixed_bc_1d(5);
  const GalerkinScheme scheme = build_scheme(op, 2, 0);
  Rng rng(3);
  const Eigen::VectorXcd v =
      random_vector(rng, static_cast<Eigen::Index>(op->size()));

  const Eigen::VectorXcd pv = apply_P(scheme, v);
  REQUIRE(pv.size() == 4);
  CHECK(pv[0] == v[0]);
  CHECK(pv[3] == v[3]);

  const Eigen::VectorXcd jv = embed_J(scheme, pv);
  REQUIRE(jv.size() == 10);
  CHECK((jv.head(4) - v.head(4)).norm() == 0.0);
  CHECK(jv.tail(6).norm() == 0.0);

  // P J = identity on the section
  CHECK((apply_P(scheme, jv) - pv).norm() == 0.0);
}

TEST_CASE("A_n is the diagonal of eigenvalues and is projection stable") {
  const auto op = SpatialOperator::dirichlet_square_2d(12);
  const GalerkinScheme scheme = build_scheme(op, 5, 5);
  const Eigen::VectorXcd diag = project_A_diag(scheme);
  for (std::size_t i = 0; i < scheme.dim(); ++i) {
    CHECK(diag[static_cast<Eigen::Index>(i)] ==
          Complex(0.0, scheme.mu(i)));
  }

  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::VectorXcd v =
        random_vector(rng, static_cast<Eigen::Index>(op->size()));
    const Eigen::VectorXcd pv = apply_P(scheme, v);
    double local = 0.0;
    for (std::size_t i = 0; i < scheme.dim(); ++i) {
      local += scheme.mu(i) * scheme.mu(i) *
               std::norm(pv[static_cast<Eigen::Index>(i)]);
    }
    CHECK(std::sqrt(local) <= a_norm(*op, v) * (1.0 + 1e-12));
    CHECK(graph_norm(scheme, pv) <= graph_norm(*op, v) * (1.0 + 1e-12));
  }
}

TEST_CASE("projected law matches a quadrature oracle") {
  const QuadratureRule rule = gauss_legendre(48);
  for (const auto& op :
       {SpatialOperator::mixed_bc_1d(4), SpatialOperator::periodic_1d(4),
        SpatialOperator::dirichlet_square_2d(4)}) {
    CAPTURE(op->name());
    const std::size_t kernel = std::min<std::size_t>(op->kernel_count(), 2);
    const GalerkinScheme scheme = build_scheme(op, 3, kernel);
    const MaterialLaw law =
        heat_law(op->theta_components(), op->q_components());
    const Complex z(1.0, 2.0);
    const Eigen::MatrixXcd projected = project_law(law, scheme, z);
    const Eigen::MatrixXcd coeffs = law(z);
    for (std::size_t i = 0; i < scheme.dim(); ++i) {
      for (std::size_t j = 0; j < scheme.dim(); ++j) {
        const Complex direct =
            quad_law_entry(*op, coeffs, scheme.global_index(i),
                           scheme.global_index(j), rule);
        CHECK(std::abs(projected(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(j)) -
                       direct) < 1e-11);
      }
    }
  }
}

TEST_CASE("projected accretivity cannot fall below the full constant") {
  const auto op = SpatialOperator::periodic_1d(8);
  const TimeGrid grid(32.0, 64, 0.7);
  const MaterialLaw law = heat_law(1, 1);
  const std::vector<Complex> samples = coercivity_samples(grid);

  const CoercivityReport full = coercivity_lower_bound(law, 0.7, samples);
  for (std::size_t pairs : {1UL, 3UL, 8UL}) {
    const GalerkinScheme scheme = build_scheme(op, pairs, 2);
    const CoercivityReport projected =
        coercivity_lower_bound(law, scheme, 0.7, samples);
    CHECK(projected.coercive());
    CHECK(projected.c_estimate >= full.c_estimate - 1e-12);
    CHECK(projected.d_max <= full.d_max * (1.0 + 1e-12));
    // the heat symbol restricted to a pair keeps both eigenvalues nu and 1
    CHECK(std::abs(projected.c_estimate - 0.7) < 1e-12);
  }
}

TEST_CASE("strong commutation defect vanishes exactly for complete pairs") {
  const auto op = SpatialOperator::mixed_bc_1d(8);
  const MaterialLaw law = heat_law(1, 1);
  Rng rng(5);
  const Eigen::VectorXcd u =
      random_vector(rng, static_cast<Eigen::Index>(op->size()));
  const Complex z(1.0, 3.0);

  const GalerkinScheme complete = build_scheme(op, 4, 0);
  const auto [defect_c, tail_c] = strong_convergence_defect(law, complete, z, u);
  CHECK(defect_c < 1e-13);
  CHECK(tail_c > 0.1);  // random tail content is generic

  const GalerkinScheme half = GalerkinScheme::single_index(op, 5);
  const auto [defect_h, tail_h] = strong_convergence_defect(law, half, z, u);
  CHECK(defect_h > 1e-3);  // the cut pair couples into the section
  (void)tail_h;
}

TEST_CASE("graph norm reduces to the plain norm on the kernel") {
  const auto op = SpatialOperator::periodic_1d(2);
  Eigen::VectorXcd v =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op->size()));
  v[0] = Complex(3.0, 4.0);
  CHECK(graph_norm(*op, v) == doctest::Approx(5.0));
  CHECK(a_norm(*op, v) == 0.0);
}
