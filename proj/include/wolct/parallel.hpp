#pragma once

#include <cstddef>

namespace wolct {

enum class Exec { Serial, Parallel };

/// Applies WOLCT_THREADS (0 or unset = runtime default) to the OpenMP pool.
void configure_threads_from_env();

void set_thread_count(int n);
int thread_count() noexcept;

/// Runs body(i) for i in [0, n). Each index is computed independently, so
/// results do not depend on the schedule or thread count.
template <class Body>
void for_each_index(Exec exec, std::ptrdiff_t n, Body&& body) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace wolct
