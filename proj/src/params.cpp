#include "wolct/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "wolct/error.hpp"

namespace wolct {

std::string_view to_string(ParamClass c) noexcept {
    switch (c) {
        case ParamClass::OffsetLCT: return "OffsetLCT";
        case ParamClass::LCT: return "LCT";
        case ParamClass::Fourier: return "Fourier";
        case ParamClass::TimeScalingChirp: return "TimeScalingChirp";
    }
    return "Unknown";
}

std::string_view to_string(PrefactorForm f) noexcept {
    return f == PrefactorForm::Printed ? "printed" : "squared";
}

OlctParams OlctParams::validate(double a, double b, double c, double d, double u0, double w0) {
    for (double v : {a, b, c, d, u0, w0}) {
        if (!std::isfinite(v)) throw Error(Errc::DeterminantViolation, "non-finite parameter");
    }
    const double residual = a * d - b * c - 1.0;
    if (std::abs(residual) > kDeterminantTolerance) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "ad - bc = %.12g, expected 1", residual + 1.0);
        throw Error(Errc::DeterminantViolation, buf);
    }
    OlctParams p;
    p.a_ = a;
    p.b_ = b;
    p.c_ = c;
    p.d_ = d;
    p.u0_ = u0;
    p.w0_ = w0;
    p.det_residual_ = residual;
    p.b_nonzero_ = std::abs(b) > kDegenerateB;
    return p;
}

OlctParams OlctParams::validate(const std::array<double, 6>& raw) {
    return validate(raw[0], raw[1], raw[2], raw[3], raw[4], raw[5]);
}

OlctParams invert(const OlctParams& p) {
    return OlctParams::validate(p.d(), -p.b(), -p.c(), p.a(),
                                p.b() * p.w0() - p.d() * p.u0(),
                                p.c() * p.u0() - p.a() * p.w0());
}

ParamClass classify(const OlctParams& p) noexcept {
    if (!p.has_integral_kernel()) return ParamClass::TimeScalingChirp;
    if (p.as_array() == std::array<double, 6>{0, 1, -1, 0, 0, 0}) return ParamClass::Fourier;
    if (p.u0() == 0.0 && p.w0() == 0.0) return ParamClass::LCT;
    return ParamClass::OffsetLCT;
}

cplx inverse_phase_prefactor(const OlctParams& p, PrefactorForm form) {
    const double w0_term = form == PrefactorForm::Printed ? p.w0() : p.w0() * p.w0();
    const double phase = p.c() * p.d() / 2 * p.u0() * p.u0()
                         - p.a() * p.d() * p.u0() * p.w0()
                         + p.a() * p.b() / 2 * w0_term;
    return std::polar(1.0, phase);
}

OlctParams parse_params(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view field = text.substr(pos, comma - pos);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        double v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
            throw Error(Errc::Format, "cannot parse parameter '" + std::string(field) + "'");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    if (values.size() != 6) {
        throw Error(Errc::Format, "expected 6 comma-separated parameters a,b,c,d,u0,w0");
    }
    return OlctParams::validate(values[0], values[1], values[2], values[3], values[4], values[5]);
}

std::string format_params(const OlctParams& p) {
    // Shortest text that parses back to the same doubles.
    std::string out;
    for (double x : p.as_array()) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, x);
        if (!out.empty()) out += ',';
        out.append(buf, r.ptr);
    }
    return out;
}

}  // namespace wolct
