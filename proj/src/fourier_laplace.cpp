#include "evospec/fourier_laplace.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace evospec {

namespace {

// FFTW's planner is not thread-safe, so plans are created once under a lock
// and reused. Plans are made with FFTW_UNALIGNED so they can execute on any
// caller-provided buffer via fftw_execute_dft, which is thread-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

// In-place length-n transform of a contiguous buffer.
void run_dft(std::vector<Complex>& buf, int sign) {
  fftw_plan plan = PlanCache::instance().get(buf.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
}

}  // namespace

FrequencySignal fourier_laplace(const WeightedSignal& f) {
  const TimeGrid& grid = f.grid();
  const std::size_t n = grid.samples();
  const double scale = grid.dt() / std::sqrt(2.0 * kPi);

  Eigen::MatrixXcd out(f.dim(), static_cast<Eigen::Index>(n));
  std::vector<Complex> buf(n);
  for (Eigen::Index r = 0; r < f.dim(); ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = std::exp(-grid.nu() * grid.time_at(k));
      buf[k] = w * f.values()(r, static_cast<Eigen::Index>(k));
    }
    run_dft(buf, FFTW_FORWARD);
    for (std::size_t m = 0; m < n; ++m) {
      out(r, static_cast<Eigen::Index>(m)) = scale * buf[m];
    }
  }
  return FrequencySignal(grid, std::move(out));
}

WeightedSignal inverse_fourier_laplace(const FrequencySignal& g) {
  const TimeGrid& grid = g.grid();
  const std::size_t n = grid.samples();
  const double scale = std::sqrt(2.0 * kPi) / grid.window();

  Eigen::MatrixXcd out(g.dim(), static_cast<Eigen::Index>(n));
  std::vector<Complex> buf(n);
  for (Eigen::Index r = 0; r < g.dim(); ++r) {
    for (std::size_t m = 0; m < n; ++m) {
      buf[m] = g.values()(r, static_cast<Eigen::Index>(m));
    }
    run_dft(buf, FFTW_BACKWARD);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = std::exp(grid.nu() * grid.time_at(k));
      out(r, static_cast<Eigen::Index>(k)) = scale * w * buf[k];
    }
  }
  return WeightedSignal(grid, std::move(out));
}

std::vector<Complex> derivative_symbol(const TimeGrid& grid) {
  std::vector<Complex> zs(grid.samples());
  for (std::size_t m = 0; m < zs.size(); ++m) zs[m] = grid.z_at(m);
  return zs;
}

}  // namespace evospec
