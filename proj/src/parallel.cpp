#include "ellk3/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ellk3 {

int thread_cap() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("ELLK3_STAB_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // ignore malformed values
        }
    }
    return n < 1 ? 1 : n;
}

}  // namespace ellk3
