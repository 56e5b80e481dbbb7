#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wolct {

using cplx = std::complex<double>;

/// A (u, w) evaluation coordinate. One-dimensional checks use u only.
struct SamplePoint {
    double u = 0;
    double w = 0;
};

struct Candidate {
    std::string label;
    double rel_residual = 0;
};

/// Outcome of adjudicating a printed unimodular factor against numerics.
struct CorrectionRecord {
    std::string printed_factor;
    std::string validated_factor;
    /// Max |phase| misfit of the validated factor on the fit lattice, radians.
    double max_phase_deviation = 0;
    /// Max |phase| by which the printed factor misses, radians.
    double printed_phase_deviation = 0;
    double printed_rel_residual = 0;
    double validated_rel_residual = 0;
    /// True when the validated factor differs from the printed one and replaced it.
    bool applied = false;
    std::vector<Candidate> candidates;
    std::vector<std::string> notes;
};

/// c0 + c1 u + c2 w + c3 u^2 + c4 w^2 + c5 u w
struct PhasePolynomial {
    std::array<double, 6> coeff{};

    double operator()(const SamplePoint& p) const noexcept;
    std::string to_string() const;
};

struct PhaseFit {
    PhasePolynomial poly;
    double max_deviation = 0;      ///< max |unwrapped phase - poly| over used points
    double max_modulus_error = 0;  ///< max ||ratio| - 1| over used points
    std::size_t used_points = 0;
};

/// Rectangular lattice of fit points, u varying fastest.
struct FitLattice {
    std::vector<double> us;
    std::vector<double> ws;

    std::vector<SamplePoint> points() const;
};

/// Fits the phase of ratio samples on `lattice` (row-major: w rows, u columns).
/// Samples with `usable[i] == false` are skipped; phases are unwrapped along u
/// within each row and rows are aligned through their first shared column.
PhaseFit fit_phase(const FitLattice& lattice, std::span<const cplx> ratios, std::span<const bool> usable);

/// Identity LHS = printed(pt) * rhs_bare(pt) with a suspect unimodular factor.
struct FactorProbe {
    std::function<cplx(const SamplePoint&)> lhs;
    std::function<cplx(const SamplePoint&)> rhs_bare;
    std::function<cplx(const SamplePoint&)> printed;
    std::string printed_text;
};

inline constexpr double kFitPhaseTolerance = 1e-6;
inline constexpr double kMinImprovement = 1e3;

/// Relative residual |lhs - rhs| / max(|lhs|, |rhs|) of two sample vectors.
double rel_residual(std::span<const cplx> lhs, std::span<const cplx> rhs);

/// Fit lattice at refinement level `level` (0 = coarsest); denser levels are
/// tried when phase unwrapping on a coarser one does not fit.
using LatticeLadder = std::function<FitLattice(int level)>;

/// Evaluates the printed factor at `eval`; if it misses `tolerance`, fits
/// exp(i poly) to LHS / (printed * rhs_bare) on `lattice(0..max_level)` and adopts
/// printed * exp(i poly) when it fits within kFitPhaseTolerance, meets
/// `tolerance`, and improves the residual at least kMinImprovement-fold.
/// `validated` receives the factor to use (printed when nothing is applied).
CorrectionRecord correct_factor(const FactorProbe& probe, std::span<const SamplePoint> eval, const LatticeLadder& lattice,
                                int max_level, double tolerance,
                                std::function<cplx(const SamplePoint&)>* validated = nullptr);

}  // namespace wolct
