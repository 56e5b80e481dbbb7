#include "wolct/chirpops.hpp"

#include <cmath>

#include "kernels.hpp"
#include "wolct/error.hpp"

namespace wolct {

namespace {

long check_operands(const SampledSignal& f, const SampledSignal& g, const OlctParams& p, const char* who) {
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, std::string(who) + ": grids differ");
    if (!p.has_integral_kernel()) throw Error(Errc::DegenerateB, std::string(who) + ": chirp weight needs b != 0");
    if (!f.grid().contains_origin()) {
        throw Error(Errc::LatticeViolation, std::string(who) + ": t = 0 must be a grid point");
    }
    // index of t = 0
    return std::lround(-f.grid().start() / f.grid().step());
}

}  // namespace

SampledSignal olct_convolve(const SampledSignal& f, const SampledSignal& g, const OlctParams& p, Exec exec) {
    const long origin = check_operands(f, g, p, "olct_convolve");
    const UniformGrid& grid = f.grid();
    const long n = static_cast<long>(f.size());
    const double alpha = p.a() / (2 * p.b());
    const double h = grid.step();
    std::vector<cplx> out(f.size());
    for_each_index(exec, n, [&](std::ptrdiff_t j) {
        const double t = grid.point(static_cast<std::size_t>(j));
        double re = 0, im = 0;
        for (long m = 0; m < n; ++m) {
            // t_j - t_m = (j - m) h, stored at index origin + j - m
            const cplx gv = g.at_or_zero(origin + static_cast<long>(j) - m);
            if (gv == cplx{}) continue;
            const double x = grid.point(static_cast<std::size_t>(m));
            detail::mac(re, im, detail::cmul(f[static_cast<std::size_t>(m)], gv),
                        std::polar(1.0, -alpha * x * (t - x)));
        }
        out[static_cast<std::size_t>(j)] = cplx(re, im) * h;
    });
    return SampledSignal(grid, std::move(out));
}

SampledSignal olct_correlate(const SampledSignal& f, const SampledSignal& g, const OlctParams& p, Exec exec) {
    const long origin = check_operands(f, g, p, "olct_correlate");
    const UniformGrid& grid = f.grid();
    const long n = static_cast<long>(f.size());
    const double alpha = p.a() / (2 * p.b());
    const double h = grid.step();
    std::vector<cplx> out(f.size());
    for_each_index(exec, n, [&](std::ptrdiff_t j) {
        const double t = grid.point(static_cast<std::size_t>(j));
        double re = 0, im = 0;
        for (long m = 0; m < n; ++m) {
            // t_m + t_j = (m + j - 2 origin) h, stored at index m + j - origin
            const cplx gv = g.at_or_zero(m + static_cast<long>(j) - origin);
            if (gv == cplx{}) continue;
            const double x = grid.point(static_cast<std::size_t>(m));
            detail::mac(re, im, detail::cmul_conj(gv, f[static_cast<std::size_t>(m)]),
                        std::polar(1.0, alpha * x * (x + t)));
        }
        out[static_cast<std::size_t>(j)] = cplx(re, im) * h;
    });
    return SampledSignal(grid, std::move(out));
}

}  // namespace wolct
