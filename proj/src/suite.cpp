#include "wolct/suite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "wolct/olct.hpp"
#include "wolct/parallel.hpp"
#include "wolct/windowed.hpp"

namespace wolct {

namespace {

using ojson = nlohmann::ordered_json;

/// Uniform draws that do not depend on the standard library's distribution algorithms.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()(double lo, double hi) {
        const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::mt19937_64 rng_;
};

SignalSpec draw_signal(Uniform& u, bool window) {
    SignalSpec s;
    if (window) {
        s.sigma = u(0.6, 1.2);
        s.center = u(-0.3, 0.3);
        s.rate = u(-0.2, 0.2);
    } else {
        s.sigma = u(0.8, 1.4);
        s.center = u(-0.5, 0.5);
        s.rate = u(-0.4, 0.4);
        s.freq = u(-1.0, 1.0);
    }
    return s;
}

struct Resolution {
    UniformGrid grid;
    SampledSignal f, g, phi, psi;
};

Resolution at(const SuiteSignals& s, const UniformGrid& grid) {
    return {grid, s.f.make(grid), s.g.make(grid), s.phi.make(grid), s.psi.make(grid)};
}

ojson complex_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson correction_json(const CorrectionRecord& r) {
    ojson j;
    j["printed_factor"] = r.printed_factor;
    j["validated_factor"] = r.validated_factor;
    j["applied"] = r.applied;
    j["max_phase_deviation"] = r.max_phase_deviation;
    j["printed_phase_deviation"] = r.printed_phase_deviation;
    j["printed_rel_residual"] = r.printed_rel_residual;
    j["validated_rel_residual"] = r.validated_rel_residual;
    ojson cands = ojson::array();
    for (const auto& c : r.candidates) cands.push_back({{"label", c.label}, {"rel_residual", c.rel_residual}});
    j["candidates"] = std::move(cands);
    j["notes"] = r.notes;
    return j;
}

ojson report_entry(const IdentityReport& r) {
    ojson j;
    j["case"] = std::string(to_string(r.id));
    j["passed"] = r.passed();
    j["tolerance"] = r.tolerance;
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["coarse_rel_residual"] = r.coarse_rel_residual ? ojson(*r.coarse_rel_residual) : ojson(nullptr);
    j["convergence_order"] = r.convergence_order;
    j["corrected"] = r.corrected ? correction_json(*r.corrected) : ojson(nullptr);
    j["notes"] = r.notes;
    j["error"] = r.error ? ojson(*r.error) : ojson(nullptr);
    ojson pts = ojson::array(), lhs = ojson::array(), rhs = ojson::array();
    for (const auto& p : r.sample_points) pts.push_back(ojson::array({p.u, p.w}));
    for (const auto& z : r.lhs) lhs.push_back(complex_json(z));
    for (const auto& z : r.rhs) rhs.push_back(complex_json(z));
    j["sample_points"] = std::move(pts);
    j["lhs"] = std::move(lhs);
    j["rhs"] = std::move(rhs);
    return j;
}

ojson signal_json(const SignalSpec& s) {
    return {{"sigma", s.sigma}, {"center", s.center}, {"rate", s.rate}, {"freq", s.freq}};
}

/// One case at one resolution. `points` come from the coarse grid and are reused on the fine one.
using CaseFn = std::function<IdentityReport(const Resolution&)>;


}  // namespace

SampledSignal SignalSpec::make(const UniformGrid& grid) const {
    return multiply(generate(Gaussian{sigma, center}, grid), generate(Chirp{rate, freq}, grid));
}

SuiteSignals draw_signals(std::uint64_t seed, std::size_t parseval_sets) {
    Uniform u(seed);
    SuiteSignals s;
    s.f = draw_signal(u, false);
    s.g = draw_signal(u, false);
    s.phi = draw_signal(u, true);
    s.psi = draw_signal(u, true);
    for (std::size_t i = 0; i < parseval_sets; ++i) {
        const double sign = u(0, 1) < 0.5 ? -1.0 : 1.0;
        const double b = sign * u(0.5, 3.0);
        const double a = u(-2, 2);
        const double d = u(-2, 2);
        const double c = (a * d - 1) / b;
        s.parseval_params.push_back({a, b, c, d, u(-1, 1), u(-1, 1)});
    }
    return s;
}

bool SuiteResult::all_passed() const noexcept {
    return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.passed(); });
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    SuiteResult result;
    result.config = cfg;
    result.signals = draw_signals(cfg.seed, cfg.parseval_sets);
    const SuiteSignals& sig = result.signals;

    const OlctParams p = OlctParams::validate(cfg.params);
    const OlctParams pt = OlctParams::validate(cfg.theorem_params);
    const OlctParams plct = OlctParams::validate(pt.a(), pt.b(), pt.c(), pt.d(), 0, 0);
    const OlctParams pf = OlctParams::validate(0, 1, -1, 0, 0, 0);
    std::vector<OlctParams> parseval;
    for (const auto& raw : sig.parseval_params) parseval.push_back(OlctParams::validate(raw));

    const Resolution coarse = at(sig, UniformGrid::centered(cfg.span, cfg.coarse_count));
    const Resolution fine = at(sig, UniformGrid::centered(cfg.span, cfg.fine_count));
    const double t0 = cfg.shift, s = cfg.modulation;
    const std::size_t ws = cfg.wstride;

    auto pick = [&](const SampledSignal& a, const SampledSignal& b, const OlctParams& q, std::size_t n) {
        return select_points(a, b, q, n, ws);
    };

    // Each builder selects points on the coarse grid, then returns the
    // per-resolution evaluator.
    auto plan = [&](IdentityCase id) -> CaseFn {
        const Resolution& c = coarse;
        switch (id) {
            case IdentityCase::Shift: {
                auto pts = pick(shift(c.f, c.grid.steps_for(t0)), c.phi, p, 9);
                return [=, &p](const Resolution& r) { return check_shift(r.f, r.phi, p, t0, pts); };
            }
            case IdentityCase::Modulation: {
                auto pts = pick(modulate(c.f, s), c.phi, p, 9);
                return [=, &p](const Resolution& r) { return check_modulation(r.f, r.phi, p, s, pts); };
            }
            case IdentityCase::ShiftModulation: {
                auto pts = pick(shift(modulate(c.f, s), c.grid.steps_for(t0)), c.phi, p, 9);
                return [=, &p](const Resolution& r) { return check_shift_modulation(r.f, r.phi, p, t0, s, pts); };
            }
            case IdentityCase::Inversion:
                return [=, &p](const Resolution& r) { return check_inversion(r.f, r.phi, r.psi, p, ws); };
            case IdentityCase::Orthogonality:
                return [=, &p](const Resolution& r) { return check_orthogonality(r.f, r.g, r.phi, r.psi, p, ws); };
            case IdentityCase::Parity: {
                auto pts = pick(parity(c.f), parity(c.phi), p, 9);
                return [=, &p](const Resolution& r) { return check_parity(r.f, r.phi, p, pts); };
            }
            case IdentityCase::ConjugateSwap: {
                auto pts = pick(conj_signal(c.f), conj_signal(c.phi), p, 9);
                return [=, &p](const Resolution& r) { return check_conjugate_swap(r.f, r.phi, p, pts); };
            }
            case IdentityCase::ConvolutionThm:
            case IdentityCase::Corollary1: {
                const OlctParams& q = id == IdentityCase::Corollary1 ? plct : pt;
                const TheoremLhs l = convolution_lhs(c.f, c.g, c.phi, c.psi, q);
                auto pts = pick(l.signal, l.window, q, 5);
                if (id == IdentityCase::Corollary1) {
                    return [=, &pt](const Resolution& r) { return check_corollary(1, r.f, r.g, r.phi, r.psi, pt, pts); };
                }
                return [=, &q](const Resolution& r) {
                    return check_convolution_theorem(r.f, r.g, r.phi, r.psi, q, pts);
                };
            }
            case IdentityCase::CorrelationThm: {
                const TheoremLhs l = correlation_lhs(c.f, c.g, c.phi, c.psi, pt);
                auto pts = pick(l.signal, l.window, pt, 5);
                return [=, &pt](const Resolution& r) {
                    return check_correlation_theorem(r.f, r.g, r.phi, r.psi, pt, pts);
                };
            }
            case IdentityCase::Corollary2:
            case IdentityCase::Corollary3: {
                const bool conv = id == IdentityCase::Corollary2;
                const TheoremLhs l = conv ? convolution_lhs(c.f, c.g, c.phi, c.psi, pf)
                                          : correlation_lhs(c.f, c.g, c.phi, c.psi, pf);
                auto pts = pick(l.signal, l.window, pf, 5);
                return [=, &pt](const Resolution& r) {
                    return check_corollary(conv ? 2 : 3, r.f, r.g, r.phi, r.psi, pt, pts);
                };
            }
            case IdentityCase::ParsevalOLCT:
                return [&parseval](const Resolution& r) { return check_parseval(r.f, r.g, parseval); };
            case IdentityCase::RoundTripOLCT:
                break;
        }
        const SignalSpec rt{1.0, 0.0, 0.0, 0.0};
        return [rt, &p](const Resolution& r) { return check_round_trip(rt.make(r.grid), p); };
    };

    const Resolution rt_coarse = at(sig, UniformGrid::centered(cfg.round_trip_span, cfg.round_trip_count / 2));
    const Resolution rt_fine = at(sig, UniformGrid::centered(cfg.round_trip_span, cfg.round_trip_count));

    result.reports.resize(kAllCases.size());
    for_each_index(Exec::Parallel, kAllCases.size(), [&](std::size_t i) {
        const IdentityCase id = kAllCases[i];
        IdentityReport& out = result.reports[i];
        try {
            const CaseFn fn = plan(id);
            const bool rt = id == IdentityCase::RoundTripOLCT;
            const IdentityReport lo = fn(rt ? rt_coarse : coarse);
            out = fn(rt ? rt_fine : fine);
            out.coarse_rel_residual = lo.rel_residual;
            out.convergence_order = std::log2(std::max(lo.rel_residual, 1e-300) / std::max(out.rel_residual, 1e-300));
            if (!std::isfinite(out.convergence_order)) out.convergence_order = 0;
        } catch (const std::exception& e) {
            out = IdentityReport{};
            out.id = id;
            out.error = e.what();
            out.rel_residual = out.abs_residual = 0;
        }
    });
    return result;
}

std::string report_json(const SuiteResult& result) {
    const SuiteConfig& c = result.config;
    ojson doc;
    doc["schema"] = 1;
    doc["seed"] = c.seed;
    doc["config"] = {{"params", c.params},
                     {"theorem_params", c.theorem_params},
                     {"span", c.span},
                     {"coarse_count", c.coarse_count},
                     {"fine_count", c.fine_count},
                     {"shift", c.shift},
                     {"modulation", c.modulation},
                     {"round_trip_span", c.round_trip_span},
                     {"round_trip_count", c.round_trip_count},
                     {"wstride", c.wstride}};
    doc["signals"] = {{"f", signal_json(result.signals.f)},
                      {"g", signal_json(result.signals.g)},
                      {"phi", signal_json(result.signals.phi)},
                      {"psi", signal_json(result.signals.psi)},
                      {"parseval_params", result.signals.parseval_params}};
    const auto& pr = inverse_prefactor_resolution();
    doc["inverse_prefactor"] = {{"validated", std::string(to_string(pr.validated))},
                                {"printed_rel_error", pr.printed_rel_error},
                                {"squared_rel_error", pr.squared_rel_error},
                                {"probe_params", pr.probe_params}};
    ojson reports = ojson::array();
    ojson failed = ojson::array();
    std::size_t passed = 0;
    for (const auto& r : result.reports) {
        reports.push_back(report_entry(r));
        if (r.passed()) {
            ++passed;
        } else {
            failed.push_back(std::string(to_string(r.id)));
        }
    }
    doc["reports"] = std::move(reports);
    doc["summary"] = {{"cases", result.reports.size()}, {"passed", passed}, {"failed", std::move(failed)}};
    return doc.dump(2) + "\n";
}

std::string format_table(const SuiteResult& result) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %12s %12s %9s %7s\n", "case", "rel_residual", "order", "corrected",
                  "status");
    out += line;
    for (const auto& r : result.reports) {
        const bool corrected = r.corrected && r.corrected->applied;
        std::snprintf(line, sizeof line, "%-16s %12.3e %12.2f %9s %7s\n", std::string(to_string(r.id)).c_str(),
                      r.rel_residual, r.convergence_order, corrected ? "yes" : "no",
                      r.error ? "error" : (r.passed() ? "pass" : "FAIL"));
        out += line;
    }
    return out;
}

}  // namespace wolct
