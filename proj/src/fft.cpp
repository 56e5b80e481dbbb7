#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace wolct::detail {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
    if (data.empty()) return;
    // FFTW picks SIMD codelets by buffer alignment; a fftw_malloc buffer keeps
    // results bitwise stable regardless of where the vector was allocated.
    const std::size_t n = data.size();
    std::unique_ptr<fftw_complex[], FftwFree> buf(fftw_alloc_complex(n));
    if (!buf) throw std::bad_alloc();
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    auto* raw = reinterpret_cast<std::complex<double>*>(buf.get());
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(plan);
    std::copy(raw, raw + n, data.begin());
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace wolct::detail
