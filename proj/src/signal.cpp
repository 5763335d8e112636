#include "evospec/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace evospec {

namespace {

void check_shape(const TimeGrid& grid, const Eigen::MatrixXcd& values,
                 const char* what) {
  if (values.cols() != static_cast<Eigen::Index>(grid.samples())) {
    throw std::invalid_argument(std::string(what) +
                                ": column count must equal grid.samples()");
  }
  if (values.rows() < 1) {
    throw std::invalid_argument(std::string(what) +
                                ": need at least one component");
  }
  if (!values.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": values must be finite");
  }
}

}  // namespace

WeightedSignal::WeightedSignal(TimeGrid grid, Eigen::MatrixXcd values)
    : grid_(grid), values_(std::move(values)) {
  check_shape(grid_, values_, "WeightedSignal");
}

WeightedSignal WeightedSignal::zero(const TimeGrid& grid, Eigen::Index dim) {
  return WeightedSignal(
      grid, Eigen::MatrixXcd::Zero(
                dim, static_cast<Eigen::Index>(grid.samples())));
}

FrequencySignal::FrequencySignal(TimeGrid grid, Eigen::MatrixXcd values)
    : grid_(grid), values_(std::move(values)) {
  check_shape(grid_, values_, "FrequencySignal");
}

FrequencySignal FrequencySignal::zero(const TimeGrid& grid, Eigen::Index dim) {
  return FrequencySignal(
      grid, Eigen::MatrixXcd::Zero(
                dim, static_cast<Eigen::Index>(grid.samples())));
}

double weighted_norm(const WeightedSignal& f) {
  const TimeGrid& grid = f.grid();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < f.values().cols(); ++k) {
    const double t = grid.time_at(static_cast<std::size_t>(k));
    acc += std::exp(-2.0 * grid.nu() * t) * f.values().col(k).squaredNorm();
  }
  return std::sqrt(acc * grid.dt());
}

double spectral_norm(const FrequencySignal& g) {
  const double sum = g.values().squaredNorm();
  return std::sqrt(2.0 * kPi / g.grid().window() * sum);
}

}  // namespace evospec
