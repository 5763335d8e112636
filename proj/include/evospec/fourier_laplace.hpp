#pragma once

#include <vector>

#include "evospec/signal.hpp"

namespace evospec {

// Discrete Fourier-Laplace pair. Forward:
//
//   ghat_m = dt / sqrt(2 pi) * sum_k exp(-nu t_k) f_k exp(-2 pi i k m / N)
//
// and the inverse undoes it exactly (up to rounding) on the same grid. With
// this normalisation spectral_norm(forward(f)) == weighted_norm(f).
FrequencySignal fourier_laplace(const WeightedSignal& f);
WeightedSignal inverse_fourier_laplace(const FrequencySignal& g);

// Multipliers of the weighted time derivative: entry m is
// z_m = i * xi_m + nu. Differentiating in the weighted picture is pointwise
// multiplication by these on the frequency side.
std::vector<Complex> derivative_symbol(const TimeGrid& grid);

}  // namespace evospec
