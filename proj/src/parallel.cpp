#include "wolct/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wolct {

void configure_threads_from_env() {
    const char* env = std::getenv("WOLCT_THREADS");
    if (env == nullptr) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || n < 0) return;
    if (n > 0) set_thread_count(static_cast<int>(n));
}

void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int thread_count() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wolct
