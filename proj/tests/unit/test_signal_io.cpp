#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wolct/error.hpp"
#include "wolct/signal_io.hpp"

using namespace wolct;
namespace fs = std::filesystem;

namespace {

SampledSignal sample_signal() {
    const auto g = UniformGrid::centered(2, 64);
    return multiply(generate(Gaussian{0.7, 0.1}, g), generate(Chirp{1.3, -0.4}, g));
}

fs::path temp_path(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "wolct_test_signal_io";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
    const auto f = sample_signal();
    std::stringstream ss;
    io::write_csv(ss, f);
    CHECK(ss.str().rfind("t,re,im\n", 0) == 0);
    const auto g = io::read_csv<TimeDomain>(ss);
    REQUIRE(g.size() == f.size());
    CHECK(g.grid().matches(f.grid()));
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(g[j] == f[j]);
}

TEST_CASE("binary round trip is exact, including the grid") {
    const auto f = sample_signal();
    const auto path = temp_path("f.wsig");
    io::save(path, f);
    CHECK(io::format_for(path) == io::SignalFormat::Binary);
    const auto g = io::load<TimeDomain>(path);
    CHECK(g.grid().start() == f.grid().start());
    CHECK(g.grid().step() == f.grid().step());
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(g[j] == f[j]);
}

TEST_CASE("spectra use the u header") {
    const OlctSpectrum F(UniformGrid(0, 0.5, 3), {1, cplx(0, 1), 2});
    std::stringstream ss;
    io::write_csv(ss, F);
    CHECK(ss.str().rfind("u,re,im\n", 0) == 0);
}

TEST_CASE("malformed input is reported as a format error") {
    auto code_of_read = [](const std::string& text) {
        std::istringstream is(text);
        try {
            (void)io::read_csv<TimeDomain>(is);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Io;
    };
    CHECK(code_of_read("") == Errc::Format);
    CHECK(code_of_read("x,y,z\n0,1,0\n1,1,0\n") == Errc::Format);
    CHECK(code_of_read("t,re,im\n0,1,0\n1,1,0\n3,1,0\n") == Errc::Format);
    CHECK(code_of_read("t,re,im\n0,1,0\n1,oops,0\n") == Errc::Format);
    CHECK(code_of_read("t,re,im\n0,1,0\n") == Errc::Format);

    std::istringstream bad("NOPE....");
    CHECK_THROWS_AS(io::read_binary<TimeDomain>(bad), Error);
}

TEST_CASE("missing files are I/O errors") {
    try {
        (void)io::load<TimeDomain>("/nonexistent/dir/f.csv");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Io);
    }
}
