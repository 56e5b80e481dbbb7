#pragma once

#include <complex>

namespace wolct::detail {

// Plain complex arithmetic without the C99 Annex G NaN recovery that
// std::complex operator* pays for; inputs here are always finite.
inline std::complex<double> cmul(std::complex<double> x, std::complex<double> y) noexcept {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline void mac(double& re, double& im, std::complex<double> x, std::complex<double> y) noexcept {
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
}

/// x * conj(y)
inline std::complex<double> cmul_conj(std::complex<double> x, std::complex<double> y) noexcept {
    return {x.real() * y.real() + x.imag() * y.imag(), x.imag() * y.real() - x.real() * y.imag()};
}

}  // namespace wolct::detail
