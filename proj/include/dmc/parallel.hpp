#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmc {

// Process-wide thread cap for the OpenMP kernels. 0 = use OMP default.
// Every parallel kernel has a serial twin; thread_count() == 1 selects it.
void set_thread_count(int k);
int thread_count();

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dmc
