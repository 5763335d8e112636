#include "evospec/time_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evospec {

namespace {

bool power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

TimeGrid::TimeGrid(double window, std::size_t samples, double nu,
                   double eps_wrap)
    : window_(window), samples_(samples), nu_(nu), eps_wrap_(eps_wrap) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw std::invalid_argument("TimeGrid: window must be positive and finite");
  }
  if (!power_of_two(samples)) {
    throw std::invalid_argument("TimeGrid: samples must be a power of two >= 2");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("TimeGrid: nu must be positive and finite");
  }
  if (!(eps_wrap > 0.0) || !(eps_wrap < 1.0)) {
    throw std::invalid_argument("TimeGrid: eps_wrap must lie in (0, 1)");
  }
  // allow a tiny relative slack so nu*T == ln(1/eps) written exactly passes
  const double need = std::log(1.0 / eps_wrap);
  if (nu * window < need * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "TimeGrid: window too short for the requested wrap-around level, "
        "need nu*T >= " +
        std::to_string(need));
  }
}

}  // namespace evospec
