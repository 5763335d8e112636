#pragma once

#include <cstddef>
#include <vector>

namespace evospec {

// Gauss-Legendre rule on [0, 1]. Exact for polynomials of degree 2n-1; used
// as an independent cross-check against the closed-form integrals, so it has
// to stay free of those formulas.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(std::size_t n);

}  // namespace evospec
