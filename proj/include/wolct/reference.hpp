#pragma once

#include "wolct/params.hpp"
#include "wolct/signal.hpp"
#include "wolct/windowed.hpp"

/// Naive serial implementations: each term is the textbook formula, evaluated
/// with `kernel()` and std::complex arithmetic. Kept as the baseline that the
/// factored OpenMP kernels are tested and benchmarked against.
namespace wolct::reference {

OlctSpectrum olct_direct(const SampledSignal& f, const OlctParams& p, const UniformGrid& ugrid);

TFMap wolct(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, const UniformGrid& ugrid,
            const UniformGrid& wgrid);

SampledSignal olct_convolve(const SampledSignal& f, const SampledSignal& g, const OlctParams& p);
SampledSignal olct_correlate(const SampledSignal& f, const SampledSignal& g, const OlctParams& p);

SampledSignal reconstruct(const TFMap& V, const SampledSignal& phi, const SampledSignal& psi, const OlctParams& p);

}  // namespace wolct::reference
