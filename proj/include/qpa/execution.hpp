#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qpa {

// Selects between the OpenMP kernels and their single-threaded reference
// schedule. Both produce bit-identical results; the serial path is kept for
// tests and for the kernel benchmarks.
enum class Execution { serial, parallel };

inline bool use_threads(Execution exec) noexcept {
  return exec == Execution::parallel;
}

inline int max_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qpa
