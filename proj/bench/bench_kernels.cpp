#include <benchmark/benchmark.h>

#include "wolct/chirpops.hpp"
#include "wolct/olct.hpp"
#include "wolct/reference.hpp"
#include "wolct/windowed.hpp"

using namespace wolct;

namespace {

const OlctParams kP = OlctParams::validate(2, 3, 1, 2, 1, -1);

SampledSignal signal_of(std::size_t n) {
    const auto g = UniformGrid::centered(12.8, n);
    return multiply(generate(Gaussian{1.1, 0.2}, g), generate(Chirp{0.3, 0.5}, g));
}

SampledSignal window_of(std::size_t n) { return generate(Gaussian{0.8, 0}, UniformGrid::centered(12.8, n)); }

void BM_olct_reference(benchmark::State& st) {
    const auto f = signal_of(st.range(0));
    const auto ug = induced_output_grid(kP, f.grid());
    for (auto _ : st) benchmark::DoNotOptimize(reference::olct_direct(f, kP, ug));
}

void BM_olct_direct(benchmark::State& st, Exec exec) {
    const auto f = signal_of(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(olct_direct(f, kP, exec));
}

void BM_olct_fast(benchmark::State& st) {
    const auto f = signal_of(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(olct_fast(f, kP));
}

void BM_wolct_reference(benchmark::State& st) {
    const auto f = signal_of(st.range(0));
    const auto phi = window_of(st.range(0));
    const auto ug = induced_output_grid(kP, f.grid());
    const auto wg = default_wgrid(f.grid(), 16);
    for (auto _ : st) benchmark::DoNotOptimize(reference::wolct(f, phi, kP, ug, wg));
}

void BM_wolct_direct(benchmark::State& st, Exec exec) {
    const auto f = signal_of(st.range(0));
    const auto phi = window_of(st.range(0));
    const auto ug = induced_output_grid(kP, f.grid());
    const auto wg = default_wgrid(f.grid(), 16);
    for (auto _ : st) benchmark::DoNotOptimize(wolct::wolct(f, phi, kP, ug, wg, exec));
}

void BM_wolct_fast(benchmark::State& st) {
    const auto f = signal_of(st.range(0));
    const auto phi = window_of(st.range(0));
    const auto wg = default_wgrid(f.grid(), 16);
    for (auto _ : st) benchmark::DoNotOptimize(wolct_fast(f, phi, kP, wg));
}

void BM_convolve_reference(benchmark::State& st) {
    const auto f = signal_of(st.range(0));
    const auto g = window_of(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::olct_convolve(f, g, kP));
}

void BM_convolve(benchmark::State& st, Exec exec) {
    const auto f = signal_of(st.range(0));
    const auto g = window_of(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(olct_convolve(f, g, kP, exec));
}

}  // namespace

BENCHMARK(BM_olct_reference)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_olct_direct, serial, Exec::Serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_olct_direct, parallel, Exec::Parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_olct_fast)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wolct_reference)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_wolct_direct, serial, Exec::Serial)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_wolct_direct, parallel, Exec::Parallel)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wolct_fast)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_reference)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_convolve, serial, Exec::Serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_convolve, parallel, Exec::Parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
