#include <doctest.h>

#include <cmath>
#include <random>

#include "wolct/error.hpp"
#include "wolct/params.hpp"

using namespace wolct;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected wolct::Error");
    return Errc::Io;
}

/// Random unimodular matrices with offsets, b bounded away from 0.
OlctParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2, 2), mag(0.3, 3);
    const double b = (rng() & 1 ? 1 : -1) * mag(rng);
    const double a = u(rng), d = u(rng);
    return OlctParams::validate(a, b, (a * d - 1) / b, d, u(rng), u(rng));
}

}  // namespace

TEST_CASE("validate accepts unimodular matrices and records the residual") {
    const auto p = OlctParams::validate(2, 3, 1, 2, 1, -1);
    CHECK(p.a() == 2);
    CHECK(p.w0() == -1);
    CHECK(p.determinant_residual() == 0);
    CHECK(p.has_integral_kernel());
}

TEST_CASE("validate rejects ad - bc != 1 beyond the tolerance") {
    CHECK(code_of([] { OlctParams::validate(1, 1, 1, 1, 0, 0); }) == Errc::DeterminantViolation);
    CHECK_NOTHROW(OlctParams::validate(1 + 0.5e-9, 0, 0, 1, 0, 0));
    CHECK(code_of([] { OlctParams::validate(1 + 1e-8, 0, 0, 1, 0, 0); }) == Errc::DeterminantViolation);
    CHECK(code_of([] { OlctParams::validate(NAN, 1, -1, 0, 0, 0); }) == Errc::DeterminantViolation);
}

TEST_CASE("invert follows the closed form and is an involution") {
    const auto p = OlctParams::validate(2, 3, 1, 2, 1, -1);
    const auto q = invert(p);
    CHECK(q.a() == 2);
    CHECK(q.b() == -3);
    CHECK(q.c() == -1);
    CHECK(q.d() == 2);
    CHECK(q.u0() == doctest::Approx(3 * -1 - 2 * 1));
    CHECK(q.w0() == doctest::Approx(1 * 1 - 2 * -1));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto r = random_params(rng);
        const auto rr = invert(invert(r));
        CHECK(rr.a() == r.a());
        CHECK(rr.b() == r.b());
        CHECK(rr.c() == r.c());
        CHECK(rr.d() == r.d());
        CHECK(std::abs(rr.u0() - r.u0()) < 1e-12);
        CHECK(std::abs(rr.w0() - r.w0()) < 1e-12);
    }
}

TEST_CASE("matrix part of A times A^-1 is the identity") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const auto q = invert(p);
        CHECK(std::abs(p.a() * q.a() + p.b() * q.c() - 1) < 1e-12);
        CHECK(std::abs(p.a() * q.b() + p.b() * q.d()) < 1e-12);
        CHECK(std::abs(p.c() * q.a() + p.d() * q.c()) < 1e-12);
        CHECK(std::abs(p.c() * q.b() + p.d() * q.d() - 1) < 1e-12);
    }
}

TEST_CASE("classify") {
    CHECK(classify(OlctParams::validate(0, 1, -1, 0, 0, 0)) == ParamClass::Fourier);
    CHECK(classify(OlctParams::validate(2, 3, 1, 2, 0, 0)) == ParamClass::LCT);
    CHECK(classify(OlctParams::validate(2, 3, 1, 2, 1, -1)) == ParamClass::OffsetLCT);
    CHECK(classify(OlctParams::validate(2, 0, 0, 0.5, 0, 0)) == ParamClass::TimeScalingChirp);
    CHECK(classify(OlctParams::validate(0, 1, -1, 0, 0.5, 0)) == ParamClass::OffsetLCT);
}

TEST_CASE("parse_params and format_params round-trip exactly") {
    const auto p = parse_params("2,3,1,2,1,-1");
    CHECK(p == OlctParams::validate(2, 3, 1, 2, 1, -1));
    const auto q = OlctParams::validate(0.1, 0.7, (0.1 * 0.3 - 1) / 0.7, 0.3, 0.4, -0.3);
    CHECK(parse_params(format_params(q)) == q);
    CHECK(code_of([] { parse_params("1,2,3"); }) == Errc::Format);
    CHECK(code_of([] { parse_params("1,x,0,1,0,0"); }) == Errc::Format);
    CHECK(code_of([] { parse_params("1,1,1,1,0,0"); }) == Errc::DeterminantViolation);
}

TEST_CASE("inverse prefactor forms are unimodular and differ only through w0") {
    const auto p = OlctParams::validate(2, 3, 1, 2, 1, -1);
    const auto a = inverse_phase_prefactor(p, PrefactorForm::Printed);
    const auto b = inverse_phase_prefactor(p, PrefactorForm::Squared);
    CHECK(std::abs(std::abs(a) - 1) < 1e-15);
    CHECK(std::abs(std::abs(b) - 1) < 1e-15);
    CHECK(std::abs(a - b) > 1e-3);
    const auto lct = OlctParams::validate(2, 3, 1, 2, 0, 0);
    CHECK(inverse_phase_prefactor(lct, PrefactorForm::Printed) == cplx(1, 0));
    CHECK(inverse_phase_prefactor(lct, PrefactorForm::Squared) == cplx(1, 0));
}
