#include "wolct/correction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <optional>

namespace wolct {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::array<double, 6> basis(const SamplePoint& p) { return {1.0, p.u, p.w, p.u * p.u, p.w * p.w, p.u * p.w}; }

double wrap_near(double phase, double reference) {
    return phase - kTwoPi * std::round((phase - reference) / kTwoPi);
}

}  // namespace

double PhasePolynomial::operator()(const SamplePoint& p) const noexcept {
    const auto b = basis(p);
    double s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) s += coeff[i] * b[i];
    return s;
}

std::string PhasePolynomial::to_string() const {
    static constexpr const char* names[] = {"", "*u", "*w", "*u^2", "*w^2", "*u*w"};
    std::string out;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (std::abs(coeff[i]) < 1e-9) continue;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%.9g%s", out.empty() ? "" : " + ", coeff[i], names[i]);
        out += buf;
    }
    return out.empty() ? "0" : out;
}

std::vector<SamplePoint> FitLattice::points() const {
    std::vector<SamplePoint> pts;
    pts.reserve(us.size() * ws.size());
    for (double w : ws) {
        for (double u : us) pts.push_back({u, w});
    }
    return pts;
}

PhaseFit fit_phase(const FitLattice& lattice, std::span<const cplx> ratios, std::span<const bool> usable) {
    const std::size_t cols = lattice.us.size();
    const std::size_t rows = lattice.ws.size();
    std::vector<std::optional<double>> phase(rows * cols);

    std::optional<std::size_t> prev_row;
    for (std::size_t r = 0; r < rows; ++r) {
        std::optional<double> last;
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t i = r * cols + c;
            if (!usable[i]) continue;
            double ph = std::arg(ratios[i]);
            if (last) ph = wrap_near(ph, *last);
            phase[i] = ph;
            last = ph;
        }
        if (!last) continue;
        if (prev_row) {
            // Align this row to the previous one at the first column both have.
            for (std::size_t c = 0; c < cols; ++c) {
                const auto& here = phase[r * cols + c];
                const auto& there = phase[*prev_row * cols + c];
                if (here && there) {
                    const double shift = wrap_near(*here, *there) - *here;
                    for (std::size_t cc = 0; cc < cols; ++cc) {
                        if (phase[r * cols + cc]) *phase[r * cols + cc] += shift;
                    }
                    break;
                }
            }
        }
        prev_row = r;
    }

    const auto pts = lattice.points();
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < phase.size(); ++i) {
        if (phase[i]) used.push_back(i);
    }
    PhaseFit fit;
    fit.used_points = used.size();
    if (used.empty()) return fit;

    Eigen::MatrixXd A(static_cast<Eigen::Index>(used.size()), 6);
    Eigen::VectorXd y(static_cast<Eigen::Index>(used.size()));
    for (std::size_t r = 0; r < used.size(); ++r) {
        const auto b = basis(pts[used[r]]);
        for (std::size_t c = 0; c < 6; ++c) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b[c];
        y(static_cast<Eigen::Index>(r)) = *phase[used[r]];
    }
    // Rank-deficient when the lattice degenerates (e.g. a single w row);
    // the minimum-norm solution still reproduces the sampled phases.
    const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(y);
    for (std::size_t c = 0; c < 6; ++c) fit.poly.coeff[c] = x(static_cast<Eigen::Index>(c));
    // Row alignment can leave whole turns in the constant term.
    fit.poly.coeff[0] = std::remainder(fit.poly.coeff[0], kTwoPi);
    for (std::size_t r = 0; r < used.size(); ++r) {
        fit.max_deviation =
            std::max(fit.max_deviation, std::abs(std::remainder(*phase[used[r]] - fit.poly(pts[used[r]]), kTwoPi)));
        fit.max_modulus_error = std::max(fit.max_modulus_error, std::abs(std::abs(ratios[used[r]]) - 1.0));
    }
    return fit;
}

double rel_residual(std::span<const cplx> lhs, std::span<const cplx> rhs) {
    double diff = 0, nl = 0, nr = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        diff += std::norm(lhs[i] - rhs[i]);
        nl += std::norm(lhs[i]);
        nr += std::norm(rhs[i]);
    }
    return std::sqrt(diff) / std::max({std::sqrt(nl), std::sqrt(nr), 1e-300});
}

namespace {

PhaseFit fit_on(const FactorProbe& probe, const FitLattice& lattice) {
    const auto pts = lattice.points();
    std::vector<cplx> ratios(pts.size());
    std::vector<cplx> bare(pts.size());
    double peak = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bare[i] = probe.rhs_bare(pts[i]);
        peak = std::max(peak, std::abs(bare[i]));
    }
    // std::vector<bool> is not contiguous, so the mask lives in a plain array.
    std::unique_ptr<bool[]> usable(new bool[pts.size()]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        usable[i] = std::abs(bare[i]) > 1e-3 * peak;
        if (usable[i]) ratios[i] = probe.lhs(pts[i]) / (probe.printed(pts[i]) * bare[i]);
    }
    return fit_phase(lattice, ratios, std::span<const bool>(usable.get(), pts.size()));
}

}  // namespace

CorrectionRecord correct_factor(const FactorProbe& probe, std::span<const SamplePoint> eval, const LatticeLadder& lattice,
                                int max_level, double tolerance, std::function<cplx(const SamplePoint&)>* validated) {
    CorrectionRecord rec;
    rec.printed_factor = probe.printed_text;
    rec.validated_factor = probe.printed_text;

    std::vector<cplx> lhs, bare, printed;
    for (const auto& pt : eval) {
        lhs.push_back(probe.lhs(pt));
        bare.push_back(probe.rhs_bare(pt));
        printed.push_back(probe.printed(pt));
    }
    std::vector<cplx> rhs(lhs.size());
    double peak = 0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = printed[i] * bare[i];
        peak = std::max(peak, std::abs(bare[i]));
    }
    rec.printed_rel_residual = rel_residual(lhs, rhs);
    rec.validated_rel_residual = rec.printed_rel_residual;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (std::abs(bare[i]) > 1e-6 * peak) {
            rec.printed_phase_deviation = std::max(rec.printed_phase_deviation, std::abs(std::arg(lhs[i] / rhs[i])));
        }
    }
    rec.candidates.push_back({"printed", rec.printed_rel_residual});
    if (validated) *validated = probe.printed;
    if (rec.printed_rel_residual <= tolerance) return rec;

    PhaseFit fit;
    std::size_t lattice_points = 0;
    for (int level = 0; level <= max_level; ++level) {
        const FitLattice lat = lattice(level);
        lattice_points = lat.us.size() * lat.ws.size();
        fit = fit_on(probe, lat);
        if (fit.used_points >= 6 && fit.max_deviation <= kFitPhaseTolerance) break;
    }

    rec.max_phase_deviation = fit.max_deviation;
    char buf[200];
    std::snprintf(buf, sizeof buf, "phase fit used %zu of %zu lattice points, max ||ratio|-1| = %.3g",
                  fit.used_points, lattice_points, fit.max_modulus_error);
    rec.notes.emplace_back(buf);

    const PhasePolynomial poly = fit.poly;
    auto corrected = [printed_fn = probe.printed, poly](const SamplePoint& pt) {
        return printed_fn(pt) * std::polar(1.0, poly(pt));
    };
    std::vector<cplx> rhs_fit(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) rhs_fit[i] = corrected(eval[i]) * bare[i];
    const double fit_residual = rel_residual(lhs, rhs_fit);
    const std::string fitted_text = probe.printed_text + " * exp(i*(" + poly.to_string() + "))";
    rec.candidates.push_back({"fitted: " + fitted_text, fit_residual});

    const bool accept = fit.used_points >= 6 && fit.max_deviation <= kFitPhaseTolerance && fit_residual <= tolerance &&
                        rec.printed_rel_residual >= kMinImprovement * fit_residual;
    if (accept) {
        rec.applied = true;
        rec.validated_factor = fitted_text;
        rec.validated_rel_residual = fit_residual;
        if (validated) *validated = corrected;
    } else {
        rec.notes.emplace_back("no unimodular quadratic-phase correction met the acceptance bounds");
    }
    return rec;
}

}  // namespace wolct
