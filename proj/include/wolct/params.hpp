#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace wolct {

using cplx = std::complex<double>;

inline constexpr double kDeterminantTolerance = 1e-9;
/// Below this |b| the integral kernel is abandoned for the scaling/chirp branch.
inline constexpr double kDegenerateB = 1e-12;

enum class ParamClass { OffsetLCT, LCT, Fourier, TimeScalingChirp };

std::string_view to_string(ParamClass c) noexcept;

/// Six-parameter OLCT matrix (a, b, c, d | u0, w0) with ad - bc = 1.
///
/// Instances are only produced by `validate`, so holding one means the
/// unimodularity check has passed.
class OlctParams {
public:
    static OlctParams validate(double a, double b, double c, double d, double u0, double w0);
    static OlctParams validate(const std::array<double, 6>& raw);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double u0() const noexcept { return u0_; }
    double w0() const noexcept { return w0_; }

    /// ad - bc - 1, kept for diagnostics.
    double determinant_residual() const noexcept { return det_residual_; }
    bool has_integral_kernel() const noexcept { return b_nonzero_; }

    std::array<double, 6> as_array() const noexcept { return {a_, b_, c_, d_, u0_, w0_}; }

    bool operator==(const OlctParams& o) const noexcept { return as_array() == o.as_array(); }

private:
    OlctParams() = default;

    double a_ = 1, b_ = 0, c_ = 0, d_ = 1, u0_ = 0, w0_ = 0;
    double det_residual_ = 0;
    bool b_nonzero_ = false;
};

/// A^{-1} = (d, -b, -c, a, b*w0 - d*u0, c*u0 - a*w0).
OlctParams invert(const OlctParams& p);

ParamClass classify(const OlctParams& p) noexcept;

/// The two readings of the constant phase in front of the inverse integral.
/// `Printed` uses ab/2 * w0, `Squared` uses ab/2 * w0^2.
enum class PrefactorForm { Printed, Squared };

std::string_view to_string(PrefactorForm f) noexcept;

/// exp(i (cd/2 u0^2 - ad u0 w0 + ab/2 * w0 or w0^2)).
cplx inverse_phase_prefactor(const OlctParams& p, PrefactorForm form);

/// Parses "a,b,c,d,u0,w0" and validates.
OlctParams parse_params(std::string_view text);

std::string format_params(const OlctParams& p);

}  // namespace wolct
