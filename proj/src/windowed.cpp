#include "wolct/windowed.hpp"

#include <cmath>

#include "kernels.hpp"
#include "wolct/error.hpp"

namespace wolct {

namespace {

void require_window(const SampledSignal& f, const SampledSignal& phi) {
    if (!f.grid().matches(phi.grid())) throw Error(Errc::GridMismatch, "signal and window grids differ");
    if (l2_norm(phi) <= kZeroWindowNorm) throw Error(Errc::ZeroWindow, "window has (near) zero norm");
}

std::vector<long> lattice_offsets(const UniformGrid& tgrid, const UniformGrid& wgrid) {
    std::vector<long> k(wgrid.count());
    for (std::size_t l = 0; l < k.size(); ++l) k[l] = tgrid.steps_for(wgrid.point(l));
    return k;
}

/// g_j = f_j conj(phi_{j-k})
void fill_windowed(std::span<const cplx> f, const SampledSignal& phi, long k, std::span<cplx> out) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        out[j] = detail::cmul_conj(f[j], phi.at_or_zero(static_cast<long>(j) - k));
    }
}

}  // namespace

TFMap::TFMap(UniformGrid ugrid, UniformGrid wgrid, std::vector<cplx> values)
    : ugrid_(ugrid), wgrid_(wgrid), values_(std::move(values)) {
    if (values_.size() != ugrid_.count() * wgrid_.count()) {
        throw Error(Errc::GridMismatch, "TF map size does not match its grids");
    }
}

UniformGrid default_wgrid(const UniformGrid& tgrid, std::size_t stride) {
    const std::size_t count = std::max<std::size_t>(2, tgrid.count() / stride);
    const double step = static_cast<double>(stride) * tgrid.step();
    return UniformGrid(-static_cast<double>(count / 2) * step, step, count);
}

WindowedEvaluator::WindowedEvaluator(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p)
    : f_(f.values().begin(), f.values().end()), phi_conj_(phi.size()), kernel_(p, f.grid()) {
    require_window(f, phi);
    for (std::size_t j = 0; j < phi_conj_.size(); ++j) phi_conj_[j] = std::conj(phi[j]);
}

cplx WindowedEvaluator::operator()(double u, double w) const {
    const long k = kernel_.tgrid().steps_for(w);
    const long n = static_cast<long>(f_.size());
    const cplx scale = kernel_.post(u) * kernel_.tgrid().step();
    const double rate = -u / kernel_.params().b();
    const auto pre = kernel_.pre();
    double re = 0, im = 0;
    // Only indices where the shifted window is on the grid contribute.
    const long lo = std::max<long>(0, k);
    const long hi = std::min<long>(n, n + k);
    for (long j = lo; j < hi; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const cplx g = detail::cmul(f_[ju], phi_conj_[static_cast<std::size_t>(j - k)]);
        const cplx cross = std::polar(1.0, rate * kernel_.tgrid().point(ju));
        detail::mac(re, im, g, detail::cmul(detail::cmul(pre[ju], cross), scale));
    }
    return {re, im};
}

TFMap wolct(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& ugrid,
            const UniformGrid& wgrid, Exec exec) {
    require_window(f, phi);
    const KernelFactors kf(p, f.grid());
    const auto offsets = lattice_offsets(f.grid(), wgrid);
    const std::size_t n = f.size();
    const std::size_t cols = wgrid.count();

    std::vector<cplx> windowed(cols * n);
    for (std::size_t l = 0; l < cols; ++l) {
        fill_windowed(f.values(), phi, offsets[l], std::span(windowed).subspan(l * n, n));
    }

    std::vector<cplx> values(ugrid.count() * cols);
    for_each_index(exec, static_cast<std::ptrdiff_t>(ugrid.count()), [&](std::ptrdiff_t ks) {
        const auto k = static_cast<std::size_t>(ks);
        std::vector<cplx> row(n);
        kf.row(ugrid.point(k), row);
        for (std::size_t l = 0; l < cols; ++l) {
            const cplx* g = windowed.data() + l * n;
            double re = 0, im = 0;
            for (std::size_t j = 0; j < n; ++j) detail::mac(re, im, g[j], row[j]);
            values[k * cols + l] = {re, im};
        }
    });
    return TFMap(ugrid, wgrid, std::move(values));
}

TFMap wolct_fast(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& wgrid) {
    require_window(f, phi);
    const auto offsets = lattice_offsets(f.grid(), wgrid);
    const UniformGrid ugrid = induced_output_grid(p, f.grid());
    const std::size_t cols = wgrid.count();
    std::vector<cplx> values(ugrid.count() * cols);
    std::vector<cplx> g(f.size());
    for (std::size_t l = 0; l < cols; ++l) {
        fill_windowed(f.values(), phi, offsets[l], g);
        const auto column = olct_fast(SampledSignal(f.grid(), g), p);
        for (std::size_t k = 0; k < ugrid.count(); ++k) values[k * cols + l] = column[k];
    }
    return TFMap(ugrid, wgrid, std::move(values));
}

SampledSignal windowed_product(const SampledSignal& f, const SampledSignal& phi, double w) {
    require_window(f, phi);
    std::vector<cplx> g(f.size());
    fill_windowed(f.values(), phi, f.grid().steps_for(w), g);
    return SampledSignal(f.grid(), std::move(g));
}

OlctSpectrum wolct_slice(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, double w,
                         const UniformGrid& ugrid) {
    return olct_direct(windowed_product(f, phi, w), p, ugrid);
}

SampledSignal reconstruct(const TFMap& V, const SampledSignal& phi, const SampledSignal& psi, const OlctParams& p,
                          const UniformGrid& tgrid, Exec exec, InversionNorm norm) {
    if (!phi.grid().matches(psi.grid()) || !tgrid.matches(psi.grid())) {
        throw Error(Errc::GridMismatch, "reconstruct: windows and output grid must share a lattice");
    }
    const cplx pair = norm == InversionNorm::PsiPhi ? inner_product(psi, phi) : inner_product(phi, psi);
    if (std::abs(pair) <= kAdmissibilityTol * l2_norm(psi) * l2_norm(phi)) {
        throw Error(Errc::NonAdmissiblePair, "<psi, phi> vanishes; windows cannot reconstruct");
    }
    const auto offsets = lattice_offsets(tgrid, V.wgrid());
    const KernelFactors inverse(invert(p), V.ugrid());
    const cplx scale = validated_inverse_prefactor(p) * V.wgrid().step() / pair;
    const std::size_t rows = V.rows();
    const std::size_t cols = V.cols();

    std::vector<cplx> out(tgrid.count());
    for_each_index(exec, static_cast<std::ptrdiff_t>(out.size()), [&](std::ptrdiff_t js) {
        const auto j = static_cast<std::size_t>(js);
        std::vector<cplx> psi_shift(cols);
        for (std::size_t l = 0; l < cols; ++l) psi_shift[l] = psi.at_or_zero(js - offsets[l]);
        std::vector<cplx> s(rows);
        for (std::size_t k = 0; k < rows; ++k) {
            double re = 0, im = 0;
            const cplx* vrow = V.values().data() + k * cols;
            for (std::size_t l = 0; l < cols; ++l) detail::mac(re, im, vrow[l], psi_shift[l]);
            s[k] = {re, im};
        }
        out[j] = inverse.apply(s, tgrid.point(j)) * scale;
    });
    return SampledSignal(tgrid, std::move(out));
}

cplx tf_inner_product(const TFMap& V1, const TFMap& V2) {
    if (!V1.ugrid().matches(V2.ugrid()) || !V1.wgrid().matches(V2.wgrid())) {
        throw Error(Errc::GridMismatch, "tf_inner_product: TF grids differ");
    }
    return inner_product(V1.values(), V2.values(), V1.ugrid().step() * V1.wgrid().step());
}

}  // namespace wolct
