#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wolct/correction.hpp"
#include "wolct/params.hpp"
#include "wolct/signal.hpp"

namespace wolct {

enum class IdentityCase {
    Shift,
    Modulation,
    ShiftModulation,
    Inversion,
    Orthogonality,
    Parity,
    ConjugateSwap,
    ConvolutionThm,
    CorrelationThm,
    Corollary1,
    Corollary2,
    Corollary3,
    ParsevalOLCT,
    RoundTripOLCT,
};

inline constexpr std::array<IdentityCase, 14> kAllCases = {
    IdentityCase::Shift,          IdentityCase::Modulation,     IdentityCase::ShiftModulation,
    IdentityCase::Inversion,      IdentityCase::Orthogonality,  IdentityCase::Parity,
    IdentityCase::ConjugateSwap,  IdentityCase::ConvolutionThm, IdentityCase::CorrelationThm,
    IdentityCase::Corollary1,     IdentityCase::Corollary2,     IdentityCase::Corollary3,
    IdentityCase::ParsevalOLCT,   IdentityCase::RoundTripOLCT,
};

std::string_view to_string(IdentityCase c) noexcept;
std::optional<IdentityCase> identity_case_from_string(std::string_view name) noexcept;

inline constexpr double kTolerance1D = 1e-6;
inline constexpr double kTolerance2D = 1e-3;

struct IdentityReport {
    IdentityCase id = IdentityCase::Shift;
    std::vector<SamplePoint> sample_points;
    std::vector<cplx> lhs;
    std::vector<cplx> rhs;
    double abs_residual = 0;
    double rel_residual = 0;
    double tolerance = 0;
    /// Residual of the same check on the coarser grid, when a refinement study ran.
    std::optional<double> coarse_rel_residual;
    double convergence_order = 0;
    std::optional<CorrectionRecord> corrected;
    std::vector<std::string> notes;
    /// Set when the case threw; the residual fields are then meaningless.
    std::optional<std::string> error;

    bool passed() const noexcept;
    /// Recomputes abs/rel residual from lhs and rhs.
    void update_residuals();
};

// Closed-form phase factors of the single-factor identities.
cplx shift_factor(const OlctParams& p, double t0, double u);
cplx modulation_factor(const OlctParams& p, double s, double u);
/// E as printed for the combined shift and modulation.
cplx shift_modulation_printed_factor(const OlctParams& p, double t0, double s, double u);
/// E obtained by composing the shift and modulation factors:
/// conj(shift_factor(u) * modulation_factor(u - a t0)).
cplx shift_modulation_composed_factor(const OlctParams& p, double t0, double s, double u);
cplx parity_factor(const OlctParams& p, double u);
cplx conjugate_swap_printed_factor(const OlctParams& p, double u, double w);

/// Fit lattice covering the bounding box of `points` with 8*2^level + 1 columns
/// and at most as many rows; w is snapped to the lattice of `tgrid`.
FitLattice fit_lattice_around(std::span<const SamplePoint> points, const UniformGrid& tgrid, int level = 0);

/// Picks a 3x3 (count 9) or plus-shaped (count 5) set of (u, w) points around
/// the peak of |V_win sig|, where every point keeps |V| >= 1e-3 of the peak.
std::vector<SamplePoint> select_points(const SampledSignal& sig, const SampledSignal& win, const OlctParams& p,
                                       std::size_t count, std::size_t wstride = 4);

/// Parameters at which theorem readings that coincide for a = d, u0 = w0 = 0
/// are told apart.
std::array<double, 6> theorem_probe_params() noexcept;

// Each check evaluates both sides at `points` (w values on the signals' lattice)
// and, when the printed factor misses, runs the correction protocol.

IdentityReport check_shift(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, double t0,
                           std::span<const SamplePoint> points);
IdentityReport check_modulation(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p, double s,
                                std::span<const SamplePoint> points);
IdentityReport check_shift_modulation(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p,
                                      double t0, double s, std::span<const SamplePoint> points);
/// Requires a reflection-invariant grid (AsymmetricGrid otherwise).
IdentityReport check_parity(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p,
                            std::span<const SamplePoint> points);
IdentityReport check_conjugate_swap(const SampledSignal& f, const SampledSignal& phi, const OlctParams& p,
                                    std::span<const SamplePoint> points);

/// Entries: the general relation, equal windows, equal signals, energy.
IdentityReport check_orthogonality(const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                                   const SampledSignal& psi, const OlctParams& p, std::size_t wstride = 4);

/// Reconstructs f from its map under phi using the synthesis window psi.
IdentityReport check_inversion(const SampledSignal& f, const SampledSignal& phi, const SampledSignal& psi,
                               const OlctParams& p, std::size_t wstride = 4);

IdentityReport check_convolution_theorem(const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                                         const SampledSignal& psi, const OlctParams& p,
                                         std::span<const SamplePoint> points);
IdentityReport check_correlation_theorem(const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                                         const SampledSignal& psi, const OlctParams& p,
                                         std::span<const SamplePoint> points);

/// which = 1: convolution theorem at (a,b,c,d,0,0) taken from `base`.
/// which = 2, 3: convolution / correlation at (0,1,-1,0,0,0); `base` is ignored.
IdentityReport check_corollary(int which, const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                               const SampledSignal& psi, const OlctParams& base, std::span<const SamplePoint> points);

/// <f,g> against <O_A f, O_A g> for every parameter set.
IdentityReport check_parseval(const SampledSignal& f, const SampledSignal& g, std::span<const OlctParams> params);

/// iolct(olct(f)) against f, adjudicating the inverse prefactor form.
IdentityReport check_round_trip(const SampledSignal& f, const OlctParams& p);

// The LHS signal/window pairs of the theorems, exposed for point selection.
struct TheoremLhs {
    SampledSignal signal;
    SampledSignal window;
};
TheoremLhs convolution_lhs(const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                           const SampledSignal& psi, const OlctParams& p);
TheoremLhs correlation_lhs(const SampledSignal& f, const SampledSignal& g, const SampledSignal& phi,
                           const SampledSignal& psi, const OlctParams& p);

}  // namespace wolct
