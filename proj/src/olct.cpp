#include "wolct/olct.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

#include "fft.hpp"
#include "kernels.hpp"
#include "wolct/diagnostics.hpp"
#include "wolct/error.hpp"

namespace wolct {

namespace {

constexpr double kPi = std::numbers::pi;

void require_kernel(const OlctParams& p, const char* who) {
    if (!p.has_integral_kernel()) {
        throw Error(Errc::DegenerateB, std::string(who) + ": |b| <= 1e-12, use the b = 0 branch");
    }
}

cplx kernel_norm(double b) { return 1.0 / std::sqrt(cplx(0.0, 2 * kPi * b)); }

}  // namespace

cplx kernel(const OlctParams& p, double t, double u) {
    require_kernel(p, "kernel");
    const double b = p.b();
    const double phase = p.a() / (2 * b) * t * t - t * (u - p.u0()) / b - u * (p.d() * p.u0() - b * p.w0()) / b +
                         p.d() / (2 * b) * (u * u + p.u0() * p.u0());
    return kernel_norm(b) * std::polar(1.0, phase);
}

KernelFactors::KernelFactors(const OlctParams& p, const UniformGrid& tgrid)
    : p_(p), tgrid_(tgrid), pre_(tgrid.count()) {
    require_kernel(p, "KernelFactors");
    const double b = p.b();
    for (std::size_t j = 0; j < pre_.size(); ++j) {
        const double t = tgrid.point(j);
        pre_[j] = std::polar(1.0, p.a() / (2 * b) * t * t + t * p.u0() / b);
    }
    norm_ = kernel_norm(b);
}

cplx KernelFactors::post(double u) const noexcept {
    const double b = p_.b();
    const double phase = -u * (p_.d() * p_.u0() - b * p_.w0()) / b + p_.d() / (2 * b) * (u * u + p_.u0() * p_.u0());
    return norm_ * std::polar(1.0, phase);
}

void KernelFactors::row(double u, std::span<cplx> out) const noexcept {
    const cplx scale = post(u) * tgrid_.step();
    const double rate = -u / p_.b();
    for (std::size_t j = 0; j < pre_.size(); ++j) {
        const cplx cross = std::polar(1.0, rate * tgrid_.point(j));
        out[j] = detail::cmul(detail::cmul(pre_[j], cross), scale);
    }
}

cplx KernelFactors::apply(std::span<const cplx> g, double u) const noexcept {
    const cplx scale = post(u) * tgrid_.step();
    const double rate = -u / p_.b();
    double re = 0, im = 0;
    for (std::size_t j = 0; j < pre_.size(); ++j) {
        const cplx cross = std::polar(1.0, rate * tgrid_.point(j));
        detail::mac(re, im, g[j], detail::cmul(detail::cmul(pre_[j], cross), scale));
    }
    return {re, im};
}

UniformGrid induced_output_grid(const OlctParams& p, const UniformGrid& tgrid) {
    require_kernel(p, "induced_output_grid");
    const auto n = tgrid.count();
    const double du = std::abs(p.b()) * 2 * kPi / (static_cast<double>(n) * tgrid.step());
    return UniformGrid(-static_cast<double>(n / 2) * du, du, n);
}

UniformGrid induced_input_grid(const OlctParams& p, const UniformGrid& ugrid) {
    require_kernel(p, "induced_input_grid");
    const auto n = ugrid.count();
    const double h = std::abs(p.b()) * 2 * kPi / (static_cast<double>(n) * ugrid.step());
    return UniformGrid(-static_cast<double>(n / 2) * h, h, n);
}

namespace detail {

std::vector<cplx> direct_sum(std::span<const cplx> g, const KernelFactors& kf, const UniformGrid& ugrid, Exec exec) {
    std::vector<cplx> out(ugrid.count());
    for_each_index(exec, static_cast<std::ptrdiff_t>(out.size()), [&](std::ptrdiff_t k) {
        out[static_cast<std::size_t>(k)] = kf.apply(g, ugrid.point(static_cast<std::size_t>(k)));
    });
    return out;
}

}  // namespace detail

OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid, Exec exec) {
    require_kernel(p, "olct_direct");
    const KernelFactors kf(p, f.grid());
    return OlctSpectrum(ugrid, detail::direct_sum(f.values(), kf, ugrid, exec));
}

OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, Exec exec) {
    return olct_direct(f, p, induced_output_grid(p, f.grid()), exec);
}

OlctSpectrum olct_b0(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid) {
    if (p.has_integral_kernel()) throw Error(Errc::DegenerateB, "olct_b0 requires |b| <= 1e-12");
    const UniformGrid& tg = f.grid();
    const cplx root_d = std::sqrt(cplx(p.d(), 0.0));
    std::vector<cplx> out(ugrid.count());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double u = ugrid.point(k);
        const double t = p.d() * (u - p.u0());
        const double x = (t - tg.start()) / tg.step();
        const double fl = std::floor(x);
        const long j = static_cast<long>(fl);
        const double frac = x - fl;
        cplx sample;
        if (std::abs(frac) <= 1e-9) {
            sample = f.at_or_zero(j);
        } else if (std::abs(frac - 1) <= 1e-9) {
            sample = f.at_or_zero(j + 1);
        } else {
            sample = (1 - frac) * f.at_or_zero(j) + frac * f.at_or_zero(j + 1);
        }
        const double phase = p.c() * p.d() / 2 * (u - p.u0()) * (u - p.u0()) + u * p.w0();
        out[k] = root_d * std::polar(1.0, phase) * sample;
    }
    return OlctSpectrum(ugrid, std::move(out));
}

OlctSpectrum olct_fast(const SampledSignal& f, const OlctParams& p) {
    require_kernel(p, "olct_fast");
    const UniformGrid& tg = f.grid();
    const KernelFactors kf(p, tg);
    const std::size_t n = tg.count();
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = f[j] * kf.pre()[j];
    detail::fft_forward(g);

    const UniformGrid ug = induced_output_grid(p, tg);
    const double dw = 2 * kPi / (static_cast<double>(n) * tg.step());
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = ug.point(k);
        const double omega = u / p.b();
        const long m = std::lround(omega / dw);
        const long nn = static_cast<long>(n);
        const auto idx = static_cast<std::size_t>(((m % nn) + nn) % nn);
        out[k] = kf.post(u) * tg.step() * std::polar(1.0, -tg.start() * omega) * g[idx];
    }
    return OlctSpectrum(ug, std::move(out));
}

OlctSpectrum olct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid) {
    return p.has_integral_kernel() ? olct_direct(f, p, ugrid) : olct_b0(f, p, ugrid);
}

double edge_energy_fraction(const OlctSpectrum& F) {
    const std::size_t n = F.size();
    const std::size_t band = std::max<std::size_t>(1, n / 32);
    double total = 0, edge = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(F[k]);
        total += e;
        if (k < band || k >= n - band) edge += e;
    }
    return total > 0 ? edge / total : 0.0;
}

SampledSignal iolct(const OlctSpectrum& F, const OlctParams& p, const UniformGrid& tgrid, PrefactorForm form,
                    Exec exec) {
    require_kernel(p, "iolct");
    const double tail = edge_energy_fraction(F);
    if (tail > kTruncationThreshold) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "TruncationWarning: %.3g of the spectral energy sits at the grid edges; "
                      "inversion will be truncated",
                      tail);
        emit_diagnostic(buf);
    }
    const OlctParams inv = invert(p);
    const KernelFactors kf(inv, F.grid());
    auto values = detail::direct_sum(F.values(), kf, tgrid, exec);
    const cplx pref = inverse_phase_prefactor(p, form);
    for (auto& v : values) v *= pref;
    return SampledSignal(tgrid, std::move(values));
}

SampledSignal iolct(const OlctSpectrum& F, const OlctParams& p, const UniformGrid& tgrid, Exec exec) {
    return iolct(F, p, tgrid, inverse_prefactor_resolution().validated, exec);
}

const PrefactorResolution& inverse_prefactor_resolution() {
    static const PrefactorResolution resolution = [] {
        // w0 != 0 and ab != 0, so the two prefactor readings differ.
        const auto probe = OlctParams::validate(2, 3, 1, 2, 1, -1);
        const auto grid = UniformGrid::centered(16.0, 512);
        const auto f = multiply(generate(Gaussian{2.0, 0.0}, grid),
                                generate(Chirp{-probe.a() / probe.b(), 0.0}, grid));
        const auto F = olct_direct(f, probe, grid);
        auto error = [&](PrefactorForm form) {
            const auto back = iolct(F, probe, grid, form);
            const auto diff = combine(1.0, back, -1.0, f);
            return l2_norm(diff) / l2_norm(f);
        };
        PrefactorResolution r{};
        r.printed_rel_error = error(PrefactorForm::Printed);
        r.squared_rel_error = error(PrefactorForm::Squared);
        r.validated = r.printed_rel_error <= r.squared_rel_error ? PrefactorForm::Printed : PrefactorForm::Squared;
        r.probe_params = probe.as_array();
        return r;
    }();
    return resolution;
}

cplx validated_inverse_prefactor(const OlctParams& p) {
    return inverse_phase_prefactor(p, inverse_prefactor_resolution().validated);
}

double parseval_residual(const SampledSignal& f, const SampledSignal& g, const OlctParams& p) {
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, "parseval_residual: grids differ");
    require_kernel(p, "parseval_residual");
    const auto F = olct_direct(f, p);
    const auto G = olct_direct(g, p);
    const cplx lhs = inner_product(f, g);
    const cplx rhs = inner_product(F, G);
    const double scale = l2_norm(f) * l2_norm(g);
    return scale > 0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

}  // namespace wolct
