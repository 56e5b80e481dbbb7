#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wolct/signal_io.hpp"

using namespace wolct;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "wolct_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" WOLCT_CLI_PATH "\" " + args + " > \"" +
                            at("stdout.txt") + "\" 2> \"" + at("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("Fourier transform of a unit gaussian peaks at one") {
    REQUIRE(run("generate --shape gaussian:1 --span 16 --count 1024 --out " + at("g.csv")) == 0);
    REQUIRE(run("transform --in " + at("g.csv") + " --out " + at("G.csv")) == 0);
    const auto F = io::load<FrequencyDomain>(at("G.csv"));
    const std::size_t zero = F.size() / 2;
    CHECK(std::abs(F.grid().point(zero)) < 1e-12);
    CHECK(std::abs(std::abs(F[zero]) - 1) < 1e-8);
}

TEST_CASE("forward then inverse transform restores the signal") {
    REQUIRE(run("generate --shape gaussian:2*chirp:-0.6666666666666666 --span 16 --count 2048 --out " + at("f.csv")) ==
            0);
    REQUIRE(run("transform --params 2,3,1,2,1,-1 --fast --check --in " + at("f.csv") + " --out " + at("F.csv")) == 0);
    CHECK(slurp(at("stdout.txt")).find("relative_to_peak") != std::string::npos);
    REQUIRE(run("transform --params 2,3,1,2,1,-1 --inverse --in " + at("F.csv") + " --out " + at("f2.csv")) == 0);
    const auto f = io::load<TimeDomain>(at("f.csv"));
    const auto f2 = io::load<TimeDomain>(at("f2.csv"));
    REQUIRE(f2.grid().matches(f.grid()));
    double d = 0, n = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        d += std::norm(f2[j] - f[j]);
        n += std::norm(f[j]);
    }
    CHECK(std::sqrt(d / n) <= 1e-6);
}

TEST_CASE("exit codes") {
    REQUIRE(run("generate --shape gaussian:1 --span 4 --count 64 --out " + at("a.csv")) == 0);
    REQUIRE(run("generate --shape gaussian:1 --span 4 --count 128 --out " + at("b.csv")) == 0);
    REQUIRE(run("generate --shape zero --span 4 --count 64 --out " + at("z.csv")) == 0);
    CHECK(run("transform --in " + at("missing.csv") + " --out " + at("x.csv")) == 2);
    CHECK(run("transform --params 1,1,1,1,0,0 --in " + at("a.csv") + " --out " + at("x.csv")) == 3);
    CHECK(run("convolve --params 1,0,0,1,0,0 --in " + at("a.csv") + " --in2 " + at("a.csv") + " --out " +
              at("x.csv")) == 4);
    CHECK(run("wolct --params 2,3,1,2,1,-1 --in " + at("a.csv") + " --window file:" + at("z.csv") + " --out " +
              at("x.csv")) == 5);
    CHECK(run("convolve --in " + at("a.csv") + " --in2 " + at("b.csv") + " --out " + at("x.csv")) == 6);
    CHECK(run("generate --shape blob:1 --out " + at("x.csv")) == 64);
    CHECK(run("frobnicate") != 0);
}

TEST_CASE("windowed map of a zero signal is zero") {
    REQUIRE(run("generate --shape zero --span 4 --count 64 --out " + at("z.csv")) == 0);
    REQUIRE(run("wolct --params 2,3,1,2,1,-1 --in " + at("z.csv") + " --out " + at("zmap.csv") + " --pgm " +
                at("zmap.pgm")) == 0);
    std::ifstream is(at("zmap.csv"));
    std::string line;
    std::getline(is, line);
    CHECK(line == "u,w,re,im");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        const auto c2 = line.rfind(',');
        const auto c1 = line.rfind(',', c2 - 1);
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == 0.0);
        CHECK(std::stod(line.substr(c2 + 1)) == 0.0);
        ++rows;
    }
    CHECK(rows == 64 * 16);
    CHECK(fs::exists(at("zmap.pgm.json")));
}

TEST_CASE("rect convolution and correlation") {
    // Step 0.0625; half a step of slack keeps |t| = 1 inside the rect.
    REQUIRE(run("generate --shape rect:1.03125 --span 4 --count 128 --out " + at("r.csv")) == 0);
    REQUIRE(run("convolve --in " + at("r.csv") + " --in2 " + at("r.csv") + " --out " + at("tri.csv")) == 0);
    const auto tri = io::load<TimeDomain>(at("tri.csv"));
    for (std::size_t j = 0; j < tri.size(); ++j) {
        const double t = tri.grid().point(j);
        CHECK(std::abs(tri[j] - std::max(0.0, 2.0625 - std::abs(t))) < 1e-10);
    }
    REQUIRE(run("convolve --correlate --in " + at("r.csv") + " --in2 " + at("r.csv") + " --out " + at("cor.csv")) ==
            0);
    const auto cor = io::load<TimeDomain>(at("cor.csv"));
    // The rect has 33 unit samples, so the zero-lag correlation is 33 h.
    CHECK(std::abs(cor[cor.size() / 2] - 33 * 0.0625) < 1e-12);
}

TEST_CASE("verify is reproducible for a seed") {
    REQUIRE(run("verify --seed 7 --out " + at("v1.json")) == 0);
    const std::string table = slurp(at("stdout.txt"));
    REQUIRE(run("verify --seed 7 --out " + at("v2.json")) == 0);
    CHECK(slurp(at("v1.json")) == slurp(at("v2.json")));
    std::size_t rows = 0;
    for (char c : table) rows += c == '\n';
    CHECK(rows >= 15);
    // Thread count only changes the schedule, never the numbers.
    REQUIRE(run("verify --seed 7 --out " + at("v3.json"), "WOLCT_THREADS=1") == 0);
    CHECK(slurp(at("v1.json")) == slurp(at("v3.json")));
}

TEST_CASE("JSON config supplies flags and the command line wins") {
    {
        std::ofstream os(at("cfg.json"));
        os << R"({"generate": {"shape": "rect:1", "span": 4, "count": 64}})";
    }
    REQUIRE(run("--config " + at("cfg.json") + " generate --out " + at("c1.csv")) == 0);
    CHECK(io::load<TimeDomain>(at("c1.csv")).size() == 64);
    REQUIRE(run("--config " + at("cfg.json") + " generate --count 32 --out " + at("c2.csv")) == 0);
    const auto c2 = io::load<TimeDomain>(at("c2.csv"));
    CHECK(c2.size() == 32);
    CHECK(c2.grid().start() == -4.0);
    CHECK(run("--config " + at("nope.json") + " generate --out " + at("c3.csv")) == 2);
}
