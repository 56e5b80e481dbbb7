#include "wolct/reference.hpp"

#include <cmath>

#include "wolct/olct.hpp"

namespace wolct::reference {

namespace {

/// Sample of s at abscissa x if x is (within rounding) a grid point, else 0.
cplx sample_at(const SampledSignal& s, double x) {
    const double pos = (x - s.grid().start()) / s.grid().step();
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-6) return {};
    return s.at_or_zero(static_cast<long>(idx));
}

}  // namespace

OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid) {
    std::vector<cplx> out(ugrid.count());
    const double h = f.grid().step();
    for (std::size_t k = 0; k < out.size(); ++k) {
        cplx acc{};
        for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * kernel(p, f.grid().point(j), ugrid.point(k)) * h;
        out[k] = acc;
    }
    return OlctSpectrum(ugrid, std::move(out));
}

TFMap wolct(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& ugrid,
            const UniformGrid& wgrid) {
    std::vector<cplx> out(ugrid.count() * wgrid.count());
    const double h = f.grid().step();
    for (std::size_t k = 0; k < ugrid.count(); ++k) {
        for (std::size_t l = 0; l < wgrid.count(); ++l) {
            cplx acc{};
            for (std::size_t j = 0; j < f.size(); ++j) {
                const double t = f.grid().point(j);
                acc += f[j] * std::conj(sample_at(phi, t - wgrid.point(l))) * kernel(p, t, ugrid.point(k)) * h;
            }
            out[k * wgrid.count() + l] = acc;
        }
    }
    return TFMap(ugrid, wgrid, std::move(out));
}

SampledSignal olct_convolve(const SampledSignal& f, const SampledSignal& g, const OlctParams& p) {
    const auto& grid = f.grid();
    const double alpha = p.a() / (2 * p.b());
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = grid.point(j);
        cplx acc{};
        for (std::size_t m = 0; m < f.size(); ++m) {
            const double x = grid.point(m);
            acc += f[m] * sample_at(g, t - x) * std::exp(cplx(0, -alpha * x * (t - x)));
        }
        out[j] = acc * grid.step();
    }
    return SampledSignal(grid, std::move(out));
}

SampledSignal olct_correlate(const SampledSignal& f, const SampledSignal& g, const OlctParams& p) {
    const auto& grid = f.grid();
    const double alpha = p.a() / (2 * p.b());
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = grid.point(j);
        cplx acc{};
        for (std::size_t m = 0; m < f.size(); ++m) {
            const double x = grid.point(m);
            acc += std::conj(f[m]) * sample_at(g, x + t) * std::exp(cplx(0, alpha * x * (x + t)));
        }
        out[j] = acc * grid.step();
    }
    return SampledSignal(grid, std::move(out));
}

SampledSignal reconstruct(const TFMap& V, const SampledSignal& phi, const SampledSignal& psi, const OlctParams& p) {
    const OlctParams inv = invert(p);
    const cplx pref = validated_inverse_prefactor(p) / inner_product(psi, phi);
    const double cell = V.ugrid().step() * V.wgrid().step();
    std::vector<cplx> out(psi.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = psi.grid().point(j);
        cplx acc{};
        for (std::size_t k = 0; k < V.rows(); ++k) {
            const double u = V.ugrid().point(k);
            for (std::size_t l = 0; l < V.cols(); ++l) {
                acc += V(k, l) * kernel(inv, u, t) * sample_at(psi, t - V.wgrid().point(l)) * cell;
            }
        }
        out[j] = pref * acc;
    }
    return SampledSignal(psi.grid(), std::move(out));
}

}  // namespace wolct::reference
