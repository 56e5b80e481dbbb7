#pragma once

#include <span>
#include <vector>

#include "wolct/parallel.hpp"
#include "wolct/params.hpp"
#include "wolct/signal.hpp"

namespace wolct {

/// K_A(t,u) = (i 2 pi b)^{-1/2} exp(i[a/(2b) t^2 - t(u-u0)/b - u(d u0 - b w0)/b + d/(2b)(u^2+u0^2)])
/// with the principal square root. Throws DegenerateB for |b| <= kDegenerateB.
cplx kernel(const OlctParams& p, double t, double u);

/// Chirp factorization of K_A on a fixed t-grid:
///   K_A(t_j, u) = pre_j * exp(-i t_j u / b) * post(u).
/// `row` fills K_A(t_j, u) * step for all j; every direct transform and the
/// windowed map sum against such rows in index order.
class KernelFactors {
public:
    KernelFactors(const OlctParams& p, const UniformGrid& tgrid);

    const OlctParams& params() const noexcept { return p_; }
    const UniformGrid& tgrid() const noexcept { return tgrid_; }
    std::span<const cplx> pre() const noexcept { return pre_; }

    /// (i 2 pi b)^{-1/2} exp(i[-u(d u0 - b w0)/b + d/(2b)(u^2 + u0^2)])
    cplx post(double u) const noexcept;

    void row(double u, std::span<cplx> out) const noexcept;

    /// sum_j g_j K_A(t_j, u) step
    cplx apply(std::span<const cplx> g, double u) const noexcept;

private:
    OlctParams p_;
    UniformGrid tgrid_;
    std::vector<cplx> pre_;
    cplx norm_;
};

/// Output grid of the fast path: N points, step |b| 2 pi/(N h), centred on 0.
UniformGrid induced_output_grid(const OlctParams& p, const UniformGrid& tgrid);
/// The centred t-grid whose induced output grid is `ugrid` (same count).
UniformGrid induced_input_grid(const OlctParams& p, const UniformGrid& ugrid);

/// O(N*M) quadrature of the OLCT integral at arbitrary output points.
OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid,
                         Exec exec = Exec::Parallel);
/// olct_direct on induced_output_grid.
OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, Exec exec = Exec::Parallel);

/// b = 0 branch: sqrt(d) exp(i[cd/2 (u-u0)^2 + u w0]) f(d(u-u0)), f linearly interpolated.
OlctSpectrum olct_b0(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid);

/// Chirp / FFT / chirp evaluation on induced_output_grid, O(N log N).
OlctSpectrum olct_fast(const SampledSignal& f, const OlctParams& p);

/// Direct or b = 0 branch as the parameters require.
OlctSpectrum olct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid);

/// Outcome of the round-trip probe that picks the inverse prefactor form.
struct PrefactorResolution {
    PrefactorForm validated;
    double printed_rel_error;
    double squared_rel_error;
    std::array<double, 6> probe_params;
};

/// Computed once on first use (thread-safe).
const PrefactorResolution& inverse_prefactor_resolution();
cplx validated_inverse_prefactor(const OlctParams& p);

/// prefactor * sum_k F(u_k) K_{A^{-1}}(u_k, t) du, on `tgrid`.
SampledSignal iolct(const OlctSpectrum& F, const OlctParams& p, const UniformGrid& tgrid,
                    Exec exec = Exec::Parallel);
SampledSignal iolct(const OlctSpectrum& F, const OlctParams& p, const UniformGrid& tgrid, PrefactorForm form,
                    Exec exec = Exec::Parallel);

/// Energy fraction in the outer 1/32 of the grid at each end; a proxy for
/// spectral content lost outside the grid.
double edge_energy_fraction(const OlctSpectrum& F);
inline constexpr double kTruncationThreshold = 1e-10;

/// |<f,g> - <O_A f, O_A g>| / (|f| |g|), spectra on the induced grid.
double parseval_residual(const SampledSignal& f, const SampledSignal& g, const OlctParams& p);

namespace detail {
// Shared direct-sum driver: out_k = sum_j g_j K(t_j, u_k) step.
std::vector<cplx> direct_sum(std::span<const cplx> g, const KernelFactors& kf, const UniformGrid& ugrid, Exec exec);
}  // namespace detail

}  // namespace wolct
