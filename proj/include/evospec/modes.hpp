#pragma once

#include <vector>

#include "evospec/types.hpp"

namespace evospec {

// One complex exponential atom c * exp(i (wx x + wy y)) on the unit interval
// or unit square. Every basis field in the operator catalog is a short sum of
// these, which makes inner products, derivatives and point values exact.
struct ExpTerm {
  Complex coeff;
  double wx = 0.0;
  double wy = 0.0;
};

class AnalyticFn {
 public:
  AnalyticFn() = default;
  explicit AnalyticFn(std::vector<ExpTerm> terms);

  static AnalyticFn zero() { return AnalyticFn(); }
  static AnalyticFn constant(Complex c);
  static AnalyticFn sin_w(double w);   // sin(w x)
  static AnalyticFn cos_w(double w);   // cos(w x)
  static AnalyticFn exp_iw(double w);  // exp(i w x)

  // f(x) * g(y), lifting g's x-frequency to the y slot
  static AnalyticFn tensor(const AnalyticFn& fx, const AnalyticFn& gy);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex eval(double x, double y = 0.0) const;
  AnalyticFn dx() const;
  AnalyticFn dy() const;
  AnalyticFn scaled(Complex s) const;

  AnalyticFn operator+(const AnalyticFn& other) const;
  AnalyticFn operator-(const AnalyticFn& other) const;

 private:
  // merge equal frequencies, drop zero coefficients
  void normalize();

  std::vector<ExpTerm> terms_;
};

// integral of exp(i w x) over [0, 1]
Complex unit_exp_integral(double w);

// L2(0,1)^dims inner product, conjugate-linear in a
Complex inner_product(const AnalyticFn& a, const AnalyticFn& b, int dims);

}  // namespace evospec
