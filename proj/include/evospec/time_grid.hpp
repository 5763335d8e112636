#pragma once

#include <cstddef>

#include "evospec/types.hpp"

namespace evospec {

// Uniform sampling of the weighted half-line picture: N samples t_k = k*dt on
// the window [0, T), together with the exponential weight nu > 0.
//
// The discrete transform treats the window as periodic, so mass that the
// weight has not damped by t = T wraps around to t = 0. The constructor
// therefore rejects grids with nu*T < ln(1/eps_wrap); eps_wrap is the relative
// wrap-around level the caller is willing to tolerate.
class TimeGrid {
 public:
  TimeGrid(double window, std::size_t samples, double nu,
           double eps_wrap = 1e-8);

  double window() const { return window_; }
  std::size_t samples() const { return samples_; }
  double nu() const { return nu_; }
  double eps_wrap() const { return eps_wrap_; }

  double dt() const { return window_ / static_cast<double>(samples_); }
  double time_at(std::size_t k) const { return dt() * static_cast<double>(k); }

  // signed alias of a DFT mode index, in (-N/2, N/2]
  long long alias(std::size_t mode) const {
    const long long n = static_cast<long long>(samples_);
    const long long m = static_cast<long long>(mode) % n;
    return 2 * m > n ? m - n : m;
  }

  // angular frequency xi_m = 2*pi*alias(m)/T
  double xi(std::size_t mode) const {
    return 2.0 * kPi * static_cast<double>(alias(mode)) / window_;
  }

  // spectral parameter z_m = i*xi_m + nu on the line Re z = nu
  Complex z_at(std::size_t mode) const { return {nu_, xi(mode)}; }

  bool operator==(const TimeGrid& other) const {
    return window_ == other.window_ && samples_ == other.samples_ &&
           nu_ == other.nu_;
  }

 private:
  double window_;
  std::size_t samples_;
  double nu_;
  double eps_wrap_;
};

}  // namespace evospec
