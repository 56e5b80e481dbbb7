#pragma once

#include "wolct/parallel.hpp"
#include "wolct/params.hpp"
#include "wolct/signal.hpp"

namespace wolct {

// Both operators need 0 on the sampling lattice so that t - x and x + t land on
// grid points; samples off the grid count as zero.

/// (f * g)(t) = int f(x) g(t - x) exp(-i a/(2b) x (t - x)) dx
SampledSignal olct_convolve(const SampledSignal& f, const SampledSignal& g, const OlctParams& p,
                            Exec exec = Exec::Parallel);

/// (f o g)(t) = int conj(f(x)) g(x + t) exp(i a/(2b) x (x + t)) dx
SampledSignal olct_correlate(const SampledSignal& f, const SampledSignal& g, const OlctParams& p,
                             Exec exec = Exec::Parallel);

}  // namespace wolct
