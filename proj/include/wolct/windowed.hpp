#pragma once

#include <span>
#include <vector>

#include "wolct/olct.hpp"
#include "wolct/parallel.hpp"
#include "wolct/params.hpp"
#include "wolct/signal.hpp"

namespace wolct {

/// V(u_k, w_l) over an output-frequency grid and a grid of window shifts,
/// stored row-major (u outer, w inner).
class TFMap {
public:
    TFMap(UniformGrid ugrid, UniformGrid wgrid, std::vector<cplx> values);

    const UniformGrid& ugrid() const noexcept { return ugrid_; }
    const UniformGrid& wgrid() const noexcept { return wgrid_; }
    std::size_t rows() const noexcept { return ugrid_.count(); }
    std::size_t cols() const noexcept { return wgrid_.count(); }
    cplx operator()(std::size_t k, std::size_t l) const noexcept { return values_[k * cols() + l]; }
    std::span<const cplx> values() const noexcept { return values_; }

private:
    UniformGrid ugrid_;
    UniformGrid wgrid_;
    std::vector<cplx> values_;
};

inline constexpr double kZeroWindowNorm = 1e-12;
inline constexpr double kAdmissibilityTol = 1e-9;

/// Window shifts on every `stride`-th lattice point of `tgrid`, centred on 0.
UniformGrid default_wgrid(const UniformGrid& tgrid, std::size_t stride = 4);

/// Pointwise V^A_phi f(u, w) for any real u and lattice-aligned w. O(N) per call.
class WindowedEvaluator {
public:
    WindowedEvaluator(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p);

    cplx operator()(double u, double w) const;

    const OlctParams& params() const noexcept { return kernel_.params(); }
    const UniformGrid& tgrid() const noexcept { return kernel_.tgrid(); }

private:
    std::vector<cplx> f_;
    std::vector<cplx> phi_conj_;
    KernelFactors kernel_;
};

/// V(u_k, w_l) = sum_j f_j conj(phi(t_j - w_l)) K_A(t_j, u_k) step, windows shifted by
/// whole samples with zero fill.
TFMap wolct(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& ugrid,
            const UniformGrid& wgrid, Exec exec = Exec::Parallel);

/// Same map on induced_output_grid, one FFT per window position.
TFMap wolct_fast(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& wgrid);

/// O_A[f conj(phi(. - w))] on `ugrid`.
OlctSpectrum wolct_slice(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, double w,
                         const UniformGrid& ugrid);

/// f(t) conj(phi(t - w)) as a signal: the integrand of a single slice.
SampledSignal windowed_product(const SampledSignal& f, const SampledSignal& phi, double w);

/// Which inner product normalizes the two-window inversion.
enum class InversionNorm { PsiPhi, PhiPsi };

/// f(t) = prefactor / <psi,phi> * sum_k sum_l V(u_k,w_l) K_{A^{-1}}(u_k,t) psi(t - w_l) du dw.
/// `tgrid` must be the windows' grid.
SampledSignal reconstruct(const TFMap& V, const SampledSignal& phi, const SampledSignal& psi, const OlctParams& p,
                          const UniformGrid& tgrid, Exec exec = Exec::Parallel,
                          InversionNorm norm = InversionNorm::PsiPhi);

/// sum_k sum_l V1 conj(V2) du dw
cplx tf_inner_product(const TFMap& V1, const TFMap& V2);

}  // namespace wolct
