#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wolct/identities.hpp"

namespace wolct {

/// Gaussian envelope times a chirp: exp(-(t-center)^2/(2 sigma^2)) exp(i(rate t^2/2 + freq t)).
struct SignalSpec {
    double sigma = 1;
    double center = 0;
    double rate = 0;
    double freq = 0;

    SampledSignal make(const UniformGrid& grid) const;
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::array<double, 6> params{2, 3, 1, 2, 1, -1};
    std::array<double, 6> theorem_params{2, 3, 1, 2, 0, 0};
    double span = 12.8;
    std::size_t coarse_count = 512;
    std::size_t fine_count = 1024;
    double shift = 0.5;
    double modulation = 0.8;
    double round_trip_span = 16;
    std::size_t round_trip_count = 2048;
    std::size_t parseval_sets = 5;
    std::size_t wstride = 4;
};

struct SuiteSignals {
    SignalSpec f, g, phi, psi;
    std::vector<std::array<double, 6>> parseval_params;
};

/// Deterministic draw of the default signal set and Parseval parameter sets.
SuiteSignals draw_signals(std::uint64_t seed, std::size_t parseval_sets);

struct SuiteResult {
    SuiteConfig config;
    SuiteSignals signals;
    std::vector<IdentityReport> reports;

    bool all_passed() const noexcept;
};

/// Every case at both resolutions; per-case failures become error entries.
SuiteResult run_suite(const SuiteConfig& config);

/// Versioned JSON document; byte-identical for identical configs.
std::string report_json(const SuiteResult& result);

/// Fixed-width table: case, rel_residual, order, corrected, status.
std::string format_table(const SuiteResult& result);

}  // namespace wolct
