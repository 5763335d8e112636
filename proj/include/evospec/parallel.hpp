#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evospec {

// Resolve a job-count request: <= 0 means all hardware threads.
inline int resolve_jobs(int jobs) {
#ifdef _OPENMP
  return jobs <= 0 ? omp_get_max_threads() : jobs;
#else
  (void)jobs;
  return 1;
#endif
}

// Data-parallel loop over [0, count). Each index is visited exactly once and
// the body must only write to slots owned by its index, so the result is
// independent of the schedule. Reductions are done by the caller afterwards,
// serially, to keep summation order fixed.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
#ifdef _OPENMP
  const int nthreads = resolve_jobs(jobs);
  if (nthreads > 1 && count > 1) {
#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)jobs;
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace evospec
