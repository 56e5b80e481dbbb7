#include <doctest.h>

#include <cmath>

#include "wolct/error.hpp"
#include "wolct/identities.hpp"
#include "wolct/suite.hpp"
#include "wolct/windowed.hpp"

using namespace wolct;

namespace {

const OlctParams kP = OlctParams::validate(2, 3, 1, 2, 1, -1);
const OlctParams kThm = OlctParams::validate(2, 3, 1, 2, 0, 0);
const OlctParams kFourier = OlctParams::validate(0, 1, -1, 0, 0, 0);

struct Fixture {
    UniformGrid grid = UniformGrid::centered(12.8, 512);
    SampledSignal f = SignalSpec{1.1, 0.3, 0.25, 0.4}.make(grid);
    SampledSignal g = SignalSpec{0.9, -0.4, -0.3, 0.7}.make(grid);
    SampledSignal phi = SignalSpec{0.8, 0.1, 0.1, -0.2}.make(grid);
    SampledSignal psi = SignalSpec{1.0, -0.2, -0.15, 0.3}.make(grid);
};

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected wolct::Error");
    return Errc::Io;
}

}  // namespace

TEST_CASE("zero shift and zero modulation are exact") {
    Fixture fx;
    const auto pts = select_points(fx.f, fx.phi, kP, 9);
    const auto s = check_shift(fx.f, fx.phi, kP, 0.0, pts);
    CHECK(s.rel_residual <= 1e-15);
    CHECK_FALSE(s.corrected->applied);
    const auto m = check_modulation(fx.f, fx.phi, kP, 0.0, pts);
    CHECK(m.rel_residual <= 1e-15);
}

TEST_CASE("shift and modulation hold at general parameters") {
    Fixture fx;
    const auto pts = select_points(fx.f, fx.phi, kP, 9);
    const auto s = check_shift(fx.f, fx.phi, kP, 0.5, pts);
    CHECK(s.passed());
    CHECK_FALSE(s.corrected->applied);
    const auto m = check_modulation(fx.f, fx.phi, kP, 0.8, pts);
    CHECK(m.passed());
    CHECK_FALSE(m.corrected->applied);
}

TEST_CASE("Fourier modulation is a pure frequency translation") {
    Fixture fx;
    const auto pts = select_points(fx.f, fx.phi, kFourier, 9);
    const auto r = check_modulation(fx.f, fx.phi, kFourier, 1.0, pts);
    CHECK(r.rel_residual <= 1e-8);
}

TEST_CASE("composed shift-modulation factor relates the two maps directly") {
    Fixture fx;
    const double t0 = 0.5, s = 0.8;
    const WindowedEvaluator V(fx.f, fx.phi, kP);
    const WindowedEvaluator Vtm(shift(modulate(fx.f, s), fx.grid.steps_for(t0)), fx.phi, kP);
    const auto pts = select_points(fx.f, fx.phi, kP, 9);
    double worst = 0, peak = 0;
    for (const auto& pt : pts) {
        const cplx lhs = V(pt.u - kP.b() * s - kP.a() * t0, pt.w - t0);
        const cplx rhs = shift_modulation_composed_factor(kP, t0, s, pt.u) * Vtm(pt.u, pt.w);
        worst = std::max(worst, std::abs(lhs - rhs));
        peak = std::max(peak, std::abs(lhs));
    }
    CHECK(worst <= 1e-12 * peak);
    const auto r = check_shift_modulation(fx.f, fx.phi, kP, t0, s, select_points(shift(modulate(fx.f, s), 20), fx.phi, kP, 9));
    CHECK(r.passed());
    REQUIRE(r.corrected);
    CHECK(r.corrected->applied);
}

TEST_CASE("parity needs a reflection-invariant grid") {
    const UniformGrid skew(-3.2 + 0.01, 0.05, 128);
    const auto f = generate(Gaussian{1, 0.2}, skew);
    const std::vector<SamplePoint> pts{{0, 0}};
    CHECK(code_of([&] { (void)check_parity(f, f, kP, pts); }) == Errc::AsymmetricGrid);
}

TEST_CASE("parity with zero offsets is a reflection of the map") {
    Fixture fx;
    const auto p = OlctParams::validate(2, 3, 1, 2, 0, 0);
    const auto pts = select_points(parity(fx.f), parity(fx.phi), p, 9);
    const auto r = check_parity(fx.f, fx.phi, p, pts);
    CHECK(r.rel_residual <= 1e-12);
    CHECK(check_parity(fx.f, fx.phi, kP, select_points(parity(fx.f), parity(fx.phi), kP, 9)).passed());
}

TEST_CASE("an even signal and window are parity fixed points") {
    const auto grid = UniformGrid::centered(12.8, 512);
    const auto f = generate(Gaussian{1.2, 0}, grid);
    const auto phi = generate(Gaussian{0.7, 0}, grid);
    const auto pf = parity(f);
    // The leftmost sample has no mirror on the grid.
    for (std::size_t j = 1; j < grid.count(); ++j) CHECK(std::abs(pf[j] - f[j]) <= 1e-13 * std::abs(f[j]));
    const WindowedEvaluator V(f, phi, kThm);
    const WindowedEvaluator Vp(pf, parity(phi), kThm);
    CHECK(std::abs(V(0.4, 0.5) - Vp(0.4, 0.5)) < 1e-12);
}

TEST_CASE("conjugate swap at w = 0 needs no correction") {
    Fixture fx;
    std::vector<SamplePoint> pts;
    for (double u : {-1.0, -0.5, 0.0, 0.5, 1.0}) pts.push_back({u, 0.0});
    const auto r = check_conjugate_swap(fx.f, fx.phi, kP, pts);
    CHECK(r.rel_residual <= 1e-12);
    CHECK_FALSE(r.corrected->applied);
}

TEST_CASE("conjugate swap away from w = 0 is repaired by a sign flip") {
    Fixture fx;
    std::vector<SamplePoint> pts;
    for (double u : {-1.0, -0.5, 0.0, 0.5, 1.0}) pts.push_back({u, 1.0});
    const auto r = check_conjugate_swap(fx.f, fx.phi, kP, pts);
    REQUIRE(r.corrected);
    CHECK(r.corrected->applied);
    CHECK(r.passed());
    CHECK(r.corrected->printed_rel_residual >= kMinImprovement * r.corrected->validated_rel_residual);
}

TEST_CASE("orthogonality holds for several signal pairs") {
    Fixture fx;
    const auto r = check_orthogonality(fx.f, fx.g, fx.phi, fx.psi, kP);
    CHECK(r.passed());
    // Energy form: f = g and phi = psi.
    const auto e = check_orthogonality(fx.f, fx.f, fx.phi, fx.phi, kP);
    CHECK(e.passed());
    for (const auto& v : e.rhs) CHECK(std::abs(v.imag()) <= 1e-12 * std::abs(v));
}

TEST_CASE("inversion reconstructs the signal") {
    Fixture fx;
    const auto r = check_inversion(fx.f, fx.phi, fx.psi, kP);
    CHECK(r.passed());
    REQUIRE(r.corrected);
    CHECK_FALSE(r.corrected->applied);
}

TEST_CASE("convolution theorem at zero offsets matches the Corollary1 case exactly") {
    Fixture fx;
    const auto l = convolution_lhs(fx.f, fx.g, fx.phi, fx.psi, kThm);
    const auto pts = select_points(l.signal, l.window, kThm, 5);
    const auto thm = check_convolution_theorem(fx.f, fx.g, fx.phi, fx.psi, kThm, pts);
    const auto c1 = check_corollary(1, fx.f, fx.g, fx.phi, fx.psi, kThm, pts);
    CHECK(thm.passed());
    CHECK(c1.id == IdentityCase::Corollary1);
    REQUIRE(thm.lhs.size() == c1.lhs.size());
    for (std::size_t i = 0; i < thm.lhs.size(); ++i) {
        CHECK(thm.lhs[i] == c1.lhs[i]);
        CHECK(thm.rhs[i] == c1.rhs[i]);
    }
}

TEST_CASE("correlation theorem holds") {
    Fixture fx;
    const auto l = correlation_lhs(fx.f, fx.g, fx.phi, fx.psi, kThm);
    const auto r = check_correlation_theorem(fx.f, fx.g, fx.phi, fx.psi, kThm, select_points(l.signal, l.window, kThm, 5));
    CHECK(r.passed());
}

TEST_CASE("Fourier corollaries agree with the theorem specialized to a = 0") {
    Fixture fx;
    const auto l = convolution_lhs(fx.f, fx.g, fx.phi, fx.psi, kFourier);
    const auto pts = select_points(l.signal, l.window, kFourier, 5);
    const auto c2 = check_corollary(2, fx.f, fx.g, fx.phi, fx.psi, kThm, pts);
    const auto thm = check_convolution_theorem(fx.f, fx.g, fx.phi, fx.psi, kFourier, pts);
    CHECK(c2.passed());
    CHECK(thm.passed());
    for (std::size_t i = 0; i < c2.lhs.size(); ++i) CHECK(std::abs(c2.lhs[i] - thm.lhs[i]) <= 1e-12 * std::abs(thm.lhs[i]) + 1e-15);

    const auto lc = correlation_lhs(fx.f, fx.g, fx.phi, fx.psi, kFourier);
    const auto c3 = check_corollary(3, fx.f, fx.g, fx.phi, fx.psi, kThm, select_points(lc.signal, lc.window, kFourier, 5));
    CHECK(c3.passed());
}

TEST_CASE("zero signals give zero on both sides of the theorems") {
    Fixture fx;
    const SampledSignal zero(fx.grid);
    const std::vector<SamplePoint> pts{{0.1, 0.0}, {0.5, 0.2}, {-0.3, -0.4}};
    const auto r = check_convolution_theorem(zero, fx.g, fx.phi, fx.psi, kThm, pts);
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        CHECK(r.lhs[i] == cplx(0));
        CHECK(r.rhs[i] == cplx(0));
    }
}

TEST_CASE("Parseval and round trip pass") {
    Fixture fx;
    const std::vector<OlctParams> ps{kP, kThm, kFourier};
    CHECK(check_parseval(fx.f, fx.g, ps).passed());
    const auto grid = UniformGrid::centered(16, 2048);
    CHECK(check_round_trip(generate(Gaussian{1, 0}, grid), kP).passed());
}

TEST_CASE("applied corrections always improve by the required margin") {
    const auto result = run_suite(SuiteConfig{.seed = 3, .coarse_count = 256, .fine_count = 512});
    for (const auto& r : result.reports) {
        if (!r.corrected || !r.corrected->applied) continue;
        INFO(to_string(r.id));
        CHECK(r.corrected->printed_rel_residual >= kMinImprovement * r.corrected->validated_rel_residual);
    }
}

TEST_CASE("case names round trip") {
    for (auto c : kAllCases) CHECK(identity_case_from_string(to_string(c)) == c);
    CHECK_FALSE(identity_case_from_string("Nope"));
}
