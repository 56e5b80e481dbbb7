#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "wolct/error.hpp"
#include "wolct/reference.hpp"
#include "wolct/tfmap_io.hpp"
#include "wolct/windowed.hpp"

using namespace wolct;
namespace fs = std::filesystem;

namespace {

const OlctParams kP = OlctParams::validate(2, 3, 1, 2, 1, -1);
const OlctParams kFourier = OlctParams::validate(0, 1, -1, 0, 0, 0);

SampledSignal chirped_gaussian(const UniformGrid& g, double sigma, double rate, double freq = 0, double c = 0) {
    return multiply(generate(Gaussian{sigma, c}, g), generate(Chirp{rate, freq}, g));
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(std::span<const cplx> a) {
    double m = 0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

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

TEST_CASE("Fourier parameters reduce to a windowed DFT") {
    const auto g = UniformGrid::centered(6.4, 256);
    const auto f = chirped_gaussian(g, 1.0, 0.5, 0.3);
    const auto phi = generate(Gaussian{0.8, 0}, g);
    const auto ug = UniformGrid(-4, 0.1, 81);
    const auto wg = default_wgrid(g, 8);
    const auto V = wolct::wolct(f, phi, kFourier, ug, wg);
    // STFT oracle: (i 2 pi)^(-1/2) sum_j f_j conj(phi(t_j - w)) exp(-i t_j u) h, Gaussian window in closed form.
    const cplx norm = 1.0 / std::sqrt(cplx(0, 2 * std::numbers::pi));
    double worst = 0, peak = 0;
    for (std::size_t k = 0; k < ug.count(); k += 5) {
        for (std::size_t l = 0; l < wg.count(); ++l) {
            cplx s = 0;
            for (std::size_t j = 0; j < g.count(); ++j) {
                const double t = g.point(j);
                const double x = (t - wg.point(l)) / 0.8;
                const long m = static_cast<long>(j) - g.steps_for(wg.point(l));
                const double w = m < 0 || m >= static_cast<long>(g.count()) ? 0.0 : std::exp(-0.5 * x * x);
                s += f[j] * w * std::polar(1.0, -t * ug.point(k));
            }
            s *= norm * g.step();
            worst = std::max(worst, std::abs(V(k, l) - s));
            peak = std::max(peak, std::abs(s));
        }
    }
    CHECK(worst <= 1e-12 * peak);
}

TEST_CASE("direct map, fast map, pointwise evaluator and slices agree") {
    const auto g = UniformGrid::centered(12.8, 512);
    const auto f = chirped_gaussian(g, 1.2, 0.3, -0.4, 0.2);
    const auto phi = chirped_gaussian(g, 0.8, -0.1);
    const auto ug = induced_output_grid(kP, g);
    const auto wg = default_wgrid(g, 16);
    const auto direct = wolct::wolct(f, phi, kP, ug, wg);
    const auto fast = wolct_fast(f, phi, kP, wg);
    CHECK(max_abs_diff(direct.values(), fast.values()) <= 1e-9 * max_abs(direct.values()));

    const WindowedEvaluator E(f, phi, kP);
    for (std::size_t k = 0; k < ug.count(); k += 37) {
        for (std::size_t l = 0; l < wg.count(); l += 3) CHECK(E(ug.point(k), wg.point(l)) == direct(k, l));
    }
    const auto slice = wolct_slice(f, phi, kP, wg.point(10), ug);
    for (std::size_t k = 0; k < ug.count(); k += 11) {
        CHECK(std::abs(slice[k] - direct(k, 10)) <= 1e-12 * max_abs(direct.values()));
    }
}

TEST_CASE("map matches the naive reference and is thread-schedule invariant") {
    const auto g = UniformGrid::centered(6.4, 128);
    const auto f = chirped_gaussian(g, 1.0, 0.2, 0.5);
    const auto phi = generate(Gaussian{0.7, 0.1}, g);
    const auto ug = UniformGrid(-5, 0.25, 41);
    const auto wg = default_wgrid(g, 4);
    const auto par = wolct::wolct(f, phi, kP, ug, wg, Exec::Parallel);
    const auto ser = wolct::wolct(f, phi, kP, ug, wg, Exec::Serial);
    for (std::size_t i = 0; i < par.values().size(); ++i) REQUIRE(par.values()[i] == ser.values()[i]);
    const auto ref = reference::wolct(f, phi, kP, ug, wg);
    CHECK(max_abs_diff(par.values(), ref.values()) <= 1e-13 * max_abs(ref.values()));
}

TEST_CASE("map is linear in the signal") {
    const auto g = UniformGrid::centered(6.4, 128);
    const auto f = chirped_gaussian(g, 1.0, 0.2, 0.5);
    const auto h = chirped_gaussian(g, 0.5, -0.7, 0.1, 1.0);
    const auto phi = generate(Gaussian{0.7, 0.1}, g);
    const auto wg = default_wgrid(g, 8);
    const cplx a(1.5, -0.2), b(0.3, 0.9);
    const auto lhs = wolct_fast(combine(a, f, b, h), phi, kP, wg);
    const auto Vf = wolct_fast(f, phi, kP, wg);
    const auto Vh = wolct_fast(h, phi, kP, wg);
    double worst = 0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i) {
        worst = std::max(worst, std::abs(lhs.values()[i] - (a * Vf.values()[i] + b * Vh.values()[i])));
    }
    CHECK(worst <= 1e-12 * max_abs(lhs.values()));
}

TEST_CASE("zero windows are rejected") {
    const auto g = UniformGrid::centered(4, 64);
    const auto f = generate(Gaussian{1, 0}, g);
    const SampledSignal zero(g);
    CHECK(code_of([&] { (void)wolct_fast(f, zero, kP, default_wgrid(g)); }) == Errc::ZeroWindow);
    CHECK(code_of([&] { (void)WindowedEvaluator(f, zero, kP); }) == Errc::ZeroWindow);
}

TEST_CASE("zero input gives an all-zero map") {
    const auto g = UniformGrid::centered(4, 64);
    const auto V = wolct_fast(SampledSignal(g), generate(Gaussian{1, 0}, g), kP, default_wgrid(g));
    for (const auto& v : V.values()) CHECK(v == cplx(0));
}

TEST_CASE("reconstruction with equal gaussian windows") {
    const auto g = UniformGrid::centered(12.8, 512);
    const auto f = chirped_gaussian(g, 1.0, 0.3, 0.4, 0.2);
    const auto phi = generate(Gaussian{0.9, 0}, g);
    const auto V = wolct_fast(f, phi, kP, default_wgrid(g));
    const auto rec = reconstruct(V, phi, phi, kP, g);
    double d = 0, n = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        d += std::norm(rec[j] - f[j]);
        n += std::norm(f[j]);
    }
    CHECK(std::sqrt(d / n) <= 1e-3);
}

TEST_CASE("reconstruction matches the naive reference") {
    const auto g = UniformGrid::centered(6.4, 128);
    const auto f = chirped_gaussian(g, 1.0, 0.3, 0.4);
    const auto phi = generate(Gaussian{0.9, 0}, g);
    const auto psi = generate(Gaussian{1.2, 0.2}, g);
    const auto V = wolct_fast(f, phi, kP, default_wgrid(g, 8));
    const auto a = reconstruct(V, phi, psi, kP, g);
    const auto b = reference::reconstruct(V, phi, psi, kP);
    CHECK(max_abs_diff(a.values(), b.values()) <= 1e-12 * max_abs(b.values()));
}

TEST_CASE("orthogonal analysis and synthesis windows are not admissible") {
    const auto g = UniformGrid::centered(12.8, 512);
    const auto f = generate(Gaussian{1, 0}, g);
    const auto phi = generate(Gaussian{1, 0}, g);
    std::vector<cplx> odd(g.count());
    for (std::size_t j = 0; j < odd.size(); ++j) odd[j] = g.point(j) * phi[j];
    // The mirror of t_0 = -12.8 is off the grid; drop it so psi is exactly odd.
    odd[0] = 0;
    const SampledSignal psi(g, odd);
    const auto V = wolct_fast(f, phi, kP, default_wgrid(g));
    CHECK(code_of([&] { (void)reconstruct(V, phi, psi, kP, g); }) == Errc::NonAdmissiblePair);
}

TEST_CASE("chirp ridge drifts monotonically with the window position") {
    const auto g = UniformGrid::centered(12.8, 512);
    const double rate = 0.8;
    const auto f = generate(Chirp{rate, 0}, g);
    const auto phi = generate(Gaussian{1.0, 0}, g);
    const auto V = wolct_fast(f, phi, kFourier, default_wgrid(g, 16));
    // Instantaneous frequency rate*w: the per-column argmax u must increase with w.
    std::vector<double> ridge;
    for (std::size_t l = 2; l + 2 < V.cols(); ++l) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < V.rows(); ++k) {
            if (std::abs(V(k, l)) > std::abs(V(best, l))) best = k;
        }
        ridge.push_back(V.ugrid().point(best));
    }
    for (std::size_t i = 1; i < ridge.size(); ++i) CHECK(ridge[i] > ridge[i - 1]);
}

TEST_CASE("PGM export writes a 16-bit image and a sidecar") {
    const auto g = UniformGrid::centered(6.4, 128);
    const auto f = chirped_gaussian(g, 1.0, 0.5);
    const auto V = wolct_fast(f, generate(Gaussian{1, 0}, g), kP, default_wgrid(g, 8));
    const auto dir = fs::temp_directory_path() / "wolct_test_windowed";
    fs::create_directories(dir);
    const auto path = dir / "map.pgm";
    const double scale = io::save_tfmap_pgm(path, V);
    CHECK(scale > 0);

    std::ifstream is(path, std::ios::binary);
    std::string magic;
    std::size_t w = 0, h = 0, maxval = 0;
    is >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == V.cols());
    CHECK(h == V.rows());
    CHECK(maxval == 65535);
    is.get();
    std::vector<char> pixels((std::istreambuf_iterator<char>(is)), {});
    CHECK(pixels.size() == 2 * w * h);

    std::ifstream js(path.string() + ".json");
    const auto meta = nlohmann::json::parse(js);
    CHECK(meta["schema"] == 1);
    CHECK(meta["width"] == w);
    CHECK(meta["height"] == h);
}
