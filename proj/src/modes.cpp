#include "evospec/modes.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace evospec {

AnalyticFn::AnalyticFn(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  normalize();
}

AnalyticFn AnalyticFn::constant(Complex c) {
  return AnalyticFn({ExpTerm{c, 0.0, 0.0}});
}

AnalyticFn AnalyticFn::sin_w(double w) {
  const Complex half_i(0.0, 0.5);
  return AnalyticFn({ExpTerm{-half_i, w, 0.0}, ExpTerm{half_i, -w, 0.0}});
}

AnalyticFn AnalyticFn::cos_w(double w) {
  return AnalyticFn({ExpTerm{0.5, w, 0.0}, ExpTerm{0.5, -w, 0.0}});
}

AnalyticFn AnalyticFn::exp_iw(double w) {
  return AnalyticFn({ExpTerm{1.0, w, 0.0}});
}

AnalyticFn AnalyticFn::tensor(const AnalyticFn& fx, const AnalyticFn& gy) {
  std::vector<ExpTerm> terms;
  terms.reserve(fx.terms_.size() * gy.terms_.size());
  for (const ExpTerm& a : fx.terms_) {
    for (const ExpTerm& b : gy.terms_) {
      terms.push_back(ExpTerm{a.coeff * b.coeff, a.wx, b.wx});
    }
  }
  return AnalyticFn(std::move(terms));
}

Complex AnalyticFn::eval(double x, double y) const {
  Complex acc(0.0, 0.0);
  for (const ExpTerm& t : terms_) {
    acc += t.coeff * std::exp(Complex(0.0, t.wx * x + t.wy * y));
  }
  return acc;
}

AnalyticFn AnalyticFn::dx() const {
  std::vector<ExpTerm> terms = terms_;
  for (ExpTerm& t : terms) t.coeff *= Complex(0.0, t.wx);
  return AnalyticFn(std::move(terms));
}

AnalyticFn AnalyticFn::dy() const {
  std::vector<ExpTerm> terms = terms_;
  for (ExpTerm& t : terms) t.coeff *= Complex(0.0, t.wy);
  return AnalyticFn(std::move(terms));
}

AnalyticFn AnalyticFn::scaled(Complex s) const {
  std::vector<ExpTerm> terms = terms_;
  for (ExpTerm& t : terms) t.coeff *= s;
  return AnalyticFn(std::move(terms));
}

AnalyticFn AnalyticFn::operator+(const AnalyticFn& other) const {
  std::vector<ExpTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return AnalyticFn(std::move(terms));
}

AnalyticFn AnalyticFn::operator-(const AnalyticFn& other) const {
  return *this + other.scaled(Complex(-1.0, 0.0));
}

void AnalyticFn::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) {
              return a.wx != b.wx ? a.wx < b.wx : a.wy < b.wy;
            });
  std::vector<ExpTerm> merged;
  for (const ExpTerm& t : terms_) {
    if (!merged.empty() && merged.back().wx == t.wx &&
        merged.back().wy == t.wy) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const ExpTerm& t) {
    return t.coeff == Complex(0.0, 0.0);
  });
  terms_ = std::move(merged);
}

Complex unit_exp_integral(double w) {
  // (exp(i w) - 1) / (i w), with the series near w = 0: sum (i w)^k / (k+1)!
  if (std::abs(w) < 1e-4) {
    const Complex iw(0.0, w);
    Complex acc(1.0, 0.0);
    Complex pow(1.0, 0.0);
    double fact = 1.0;
    for (int k = 1; k <= 6; ++k) {
      pow *= iw;
      fact *= static_cast<double>(k + 1);
      acc += pow / fact;
    }
    return acc;
  }
  const Complex iw(0.0, w);
  return (std::exp(iw) - Complex(1.0, 0.0)) / iw;
}

Complex inner_product(const AnalyticFn& a, const AnalyticFn& b, int dims) {
  Complex acc(0.0, 0.0);
  for (const ExpTerm& ta : a.terms()) {
    for (const ExpTerm& tb : b.terms()) {
      Complex v = std::conj(ta.coeff) * tb.coeff *
                  unit_exp_integral(tb.wx - ta.wx);
      if (dims == 2) v *= unit_exp_integral(tb.wy - ta.wy);
      acc += v;
    }
  }
  return acc;
}

}  // namespace evospec
