#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

#define ELLK3_STRINGIFY(x) #x
#ifdef _OPENMP
#define ELLK3_PRAGMA_OMP(directive) _Pragma(ELLK3_STRINGIFY(omp directive))
#else
#define ELLK3_PRAGMA_OMP(directive)
#endif

namespace ellk3 {

// Worker count for the parallel kernels, capped by ELLK3_STAB_THREADS.
int thread_cap();

}  // namespace ellk3
