#pragma once

#include <complex>
#include <numbers>

namespace evospec {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi_v<double>;

}  // namespace evospec
