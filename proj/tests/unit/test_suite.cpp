#include <doctest.h>

#include <json.hpp>

#include <cmath>

#include "wolct/suite.hpp"

using namespace wolct;

namespace {

SuiteConfig small_config(std::uint64_t seed) {
    SuiteConfig c;
    c.seed = seed;
    c.coarse_count = 256;
    c.fine_count = 512;
    c.round_trip_count = 1024;
    return c;
}

}  // namespace

TEST_CASE("suite reports every case with finite residuals") {
    const auto r = run_suite(small_config(7));
    REQUIRE(r.reports.size() == kAllCases.size());
    for (std::size_t i = 0; i < kAllCases.size(); ++i) {
        INFO(to_string(kAllCases[i]));
        CHECK(r.reports[i].id == kAllCases[i]);
        CHECK_FALSE(r.reports[i].error);
        CHECK(std::isfinite(r.reports[i].rel_residual));
        CHECK(r.reports[i].coarse_rel_residual);
    }
}

TEST_CASE("default suite passes") {
    const auto r = run_suite(SuiteConfig{.seed = 7});
    for (const auto& rep : r.reports) {
        INFO(to_string(rep.id), " ", rep.rel_residual);
        CHECK(rep.passed());
    }
    CHECK(r.all_passed());
}

TEST_CASE("suite output is deterministic for a seed") {
    const auto a = report_json(run_suite(small_config(11)));
    const auto b = report_json(run_suite(small_config(11)));
    CHECK(a == b);
    CHECK(format_table(run_suite(small_config(11))) == format_table(run_suite(small_config(11))));
    CHECK(a != report_json(run_suite(small_config(12))));
}

TEST_CASE("signal draws depend only on the seed") {
    const auto a = draw_signals(5, 3), b = draw_signals(5, 3);
    CHECK(a.f.sigma == b.f.sigma);
    CHECK(a.psi.rate == b.psi.rate);
    REQUIRE(a.parseval_params.size() == 3);
    for (const auto& raw : a.parseval_params) {
        CHECK(std::abs(raw[0] * raw[3] - raw[1] * raw[2] - 1) <= 1e-9);
    }
}

TEST_CASE("report JSON carries the documented fields") {
    const auto r = run_suite(small_config(7));
    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["schema"] == 1);
    CHECK(j["seed"] == 7);
    CHECK(j.contains("config"));
    CHECK(j.contains("signals"));
    CHECK(j.contains("inverse_prefactor"));
    REQUIRE(j["reports"].size() == kAllCases.size());
    const auto& first = j["reports"][0];
    for (const char* key : {"case", "passed", "sample_points", "lhs", "rhs", "abs_residual", "rel_residual", "tolerance"}) {
        INFO(key);
        CHECK(first.contains(key));
    }
    CHECK(j["summary"]["cases"] == kAllCases.size());
    CHECK(j["summary"]["passed"].get<std::size_t>() + j["summary"]["failed"].size() == kAllCases.size());
}

TEST_CASE("table has a row per case") {
    const auto t = format_table(run_suite(small_config(7)));
    std::size_t lines = 0;
    for (char c : t) lines += c == '\n';
    CHECK(lines >= kAllCases.size() + 1);
    for (auto c : kAllCases) CHECK(t.find(std::string(to_string(c))) != std::string::npos);
}
