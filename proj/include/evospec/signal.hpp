#pragma once

#include <Eigen/Core>

#include "evospec/time_grid.hpp"
#include "evospec/types.hpp"

namespace evospec {

// Time samples of a C^m valued function on a weighted grid. Column k holds
// the coefficient vector at t_k. Values are plain samples f(t_k); the weight
// enters through the norm and the transform, not through the stored data.
class WeightedSignal {
 public:
  WeightedSignal(TimeGrid grid, Eigen::MatrixXcd values);

  static WeightedSignal zero(const TimeGrid& grid, Eigen::Index dim);

  const TimeGrid& grid() const { return grid_; }
  Eigen::Index dim() const { return values_.rows(); }
  const Eigen::MatrixXcd& values() const { return values_; }

 private:
  TimeGrid grid_;
  Eigen::MatrixXcd values_;
};

// Frequency-side counterpart: column m holds the coefficient vector at the
// spectral parameter z_m = i*xi_m + nu.
class FrequencySignal {
 public:
  FrequencySignal(TimeGrid grid, Eigen::MatrixXcd values);

  static FrequencySignal zero(const TimeGrid& grid, Eigen::Index dim);

  const TimeGrid& grid() const { return grid_; }
  Eigen::Index dim() const { return values_.rows(); }
  const Eigen::MatrixXcd& values() const { return values_; }

 private:
  TimeGrid grid_;
  Eigen::MatrixXcd values_;
};

// || f ||_{2,nu} on the window: sqrt( sum_k exp(-2 nu t_k) |f_k|^2 dt )
double weighted_norm(const WeightedSignal& f);

// Plancherel counterpart: sqrt( 2 pi / T * sum_m |g_m|^2 )
double spectral_norm(const FrequencySignal& g);

}  // namespace evospec
