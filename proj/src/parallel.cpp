#include "srk/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srk {

void apply_thread_cap_from_env() {
#ifdef _OPENMP
    if (const char* v = std::getenv("SRK_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) omp_set_num_threads(n);
    }
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace srk
