// OpenMP helpers. Every parallel kernel in this project writes into
// preassigned slots and reduces in a fixed order, so results are identical
// between the serial reference path and the parallel path.

#ifndef KZ_PARALLEL_HPP
#define KZ_PARALLEL_HPP

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kz {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// f(i) for i in [0, n); parallel=false is the serial reference path.
// Exceptions thrown by f are captured and rethrown after the loop (an
// exception escaping an OpenMP region would terminate the process).
template <typename F>
void parallel_for(int n, bool parallel, F&& f) {
#ifdef _OPENMP
  if (parallel) {
    std::exception_ptr first;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
#pragma omp critical
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return;
  }
#endif
  (void)parallel;
  for (int i = 0; i < n; ++i) f(i);
}

}  // namespace kz

#endif
