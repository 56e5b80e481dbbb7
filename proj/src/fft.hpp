#pragma once

#include <complex>
#include <vector>

namespace wolct::detail {

/// In-place unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i jk/N).
void fft_forward(std::vector<std::complex<double>>& data);

}  // namespace wolct::detail
