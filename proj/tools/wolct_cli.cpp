#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json_config.hpp"
#include "wolct/chirpops.hpp"
#include "wolct/error.hpp"
#include "wolct/olct.hpp"
#include "wolct/parallel.hpp"
#include "wolct/params.hpp"
#include "wolct/signal.hpp"
#include "wolct/signal_io.hpp"
#include "wolct/suite.hpp"
#include "wolct/tfmap_io.hpp"
#include "wolct/windowed.hpp"

namespace {

using namespace wolct;

// Stable exit codes.
constexpr int kExitFailedCases = 1;
constexpr int kExitIo = 2;
constexpr int kExitDeterminant = 3;
constexpr int kExitDegenerateB = 4;
constexpr int kExitZeroWindow = 5;
constexpr int kExitGridMismatch = 6;
constexpr int kExitUsage = 64;

/// Bad flag values that parse fine but make no sense together.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::Io:
        case Errc::Format:
            return kExitIo;
        case Errc::DeterminantViolation:
            return kExitDeterminant;
        case Errc::DegenerateB:
            return kExitDegenerateB;
        case Errc::ZeroWindow:
            return kExitZeroWindow;
        case Errc::GridMismatch:
            return kExitGridMismatch;
        default:
            return kExitUsage;
    }
}

OlctParams params_from(const std::string& text) {
    try {
        return parse_params(text);
    } catch (const Error& e) {
        if (e.code() == Errc::Format) throw UsageError(std::string("--params: ") + e.what());
        throw;
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": not a number: '" + s + "'");
    }
}

/// "gaussian:sigma[:center]", "chirp:rate[:freq]", "rect:halfwidth" or "zero",
/// multiplied together when joined by '*'.
SampledSignal shape_signal(const std::string& spec, const UniformGrid& grid) {
    std::optional<SampledSignal> acc;
    for (const auto& factor : split(spec, '*')) {
        const auto parts = split(factor, ':');
        const std::string& kind = parts[0];
        auto arg = [&](std::size_t i, double fallback) {
            return i < parts.size() ? number(parts[i], factor) : fallback;
        };
        SampledSignal s(grid);
        if (kind == "gaussian") {
            s = generate(Gaussian{arg(1, 1.0), arg(2, 0.0)}, grid);
        } else if (kind == "chirp") {
            s = generate(Chirp{arg(1, 0.0), arg(2, 0.0)}, grid);
        } else if (kind == "rect") {
            s = generate(Rect{arg(1, 1.0)}, grid);
        } else if (kind != "zero") {
            throw UsageError("unknown shape '" + kind + "'");
        }
        acc = acc ? multiply(*acc, s) : s;
    }
    return *acc;
}

SampledSignal window_signal(const std::string& spec, const UniformGrid& grid) {
    if (spec.rfind("file:", 0) == 0) {
        SampledSignal w = io::load<TimeDomain>(spec.substr(5));
        if (!w.grid().matches(grid)) throw Error(Errc::GridMismatch, "window file grid differs from the signal grid");
        return w;
    }
    if (spec.rfind("gaussian:", 0) != 0 && spec.rfind("rect:", 0) != 0) {
        throw UsageError("--window expects gaussian:<sigma>, rect:<halfwidth> or file:<path>");
    }
    return shape_signal(spec, grid);
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct TransformOpts {
    std::string params = "0,1,-1,0,0,0";
    std::string in, out;
    bool inverse = false, fast = false, check = false;
    double span = 0;
    std::size_t count = 0;
};

UniformGrid override_grid(const UniformGrid& fallback, double span, std::size_t count) {
    if (span <= 0 && count == 0) return fallback;
    const std::size_t n = count ? count : fallback.count();
    const double half = span > 0 ? span : 0.5 * fallback.step() * static_cast<double>(fallback.count());
    return UniformGrid::centered(half, n);
}

int cmd_transform(const TransformOpts& o) {
    const OlctParams p = params_from(o.params);
    if (o.inverse) {
        const OlctSpectrum F = io::load<FrequencyDomain>(o.in);
        if (!p.has_integral_kernel()) throw Error(Errc::DegenerateB, "the inverse needs b != 0");
        if (o.fast) std::cerr << "warning: no fast inverse; using the direct sum\n";
        const UniformGrid tgrid = override_grid(induced_input_grid(p, F.grid()), o.span, o.count);
        io::save(o.out, iolct(F, p, tgrid));
        return 0;
    }

    const SampledSignal f = io::load<TimeDomain>(o.in);
    if (o.fast || o.check) {
        if (!p.has_integral_kernel()) throw Error(Errc::DegenerateB, "the fast path needs b != 0");
        if (!power_of_two(f.size())) throw UsageError("the fast path needs a power-of-two sample count");
        if (o.span > 0 || o.count > 0) throw UsageError("the fast path always uses the induced output grid");
    }
    std::optional<OlctSpectrum> F;
    if (o.fast) {
        F = olct_fast(f, p);
    } else {
        const UniformGrid fallback = p.has_integral_kernel() ? induced_output_grid(p, f.grid()) : f.grid();
        F = olct(f, p, override_grid(fallback, o.span, o.count));
    }
    if (o.check) {
        const OlctSpectrum fast = o.fast ? *F : olct_fast(f, p);
        const OlctSpectrum direct = olct_direct(f, p);
        double dev = 0, peak = 0;
        for (std::size_t k = 0; k < direct.size(); ++k) {
            dev = std::max(dev, std::abs(fast[k] - direct[k]));
            peak = std::max(peak, std::abs(direct[k]));
        }
        std::printf("max_abs_deviation %.6e\nrelative_to_peak %.6e\n", dev, peak > 0 ? dev / peak : 0.0);
    }
    io::save(o.out, *F);
    return 0;
}

struct WolctOpts {
    std::string params = "0,1,-1,0,0,0";
    std::string in, window = "gaussian:1", out, pgm;
    bool fast = false;
    std::size_t wstride = 4;
};

int cmd_wolct(const WolctOpts& o) {
    if (o.out.empty() && o.pgm.empty()) throw UsageError("give --out and/or --pgm");
    if (o.wstride == 0) throw UsageError("--wstride must be positive");
    const OlctParams p = params_from(o.params);
    const SampledSignal f = io::load<TimeDomain>(o.in);
    const SampledSignal phi = window_signal(o.window, f.grid());
    if (!p.has_integral_kernel()) throw Error(Errc::DegenerateB, "the windowed transform needs b != 0");
    const UniformGrid wg = default_wgrid(f.grid(), o.wstride);
    const TFMap V = o.fast ? wolct_fast(f, phi, p, wg) : wolct::wolct(f, phi, p, induced_output_grid(p, f.grid()), wg);
    if (!o.out.empty()) io::save_tfmap_csv(o.out, V);
    if (!o.pgm.empty()) io::save_tfmap_pgm(o.pgm, V);
    return 0;
}

struct VerifyOpts {
    std::uint64_t seed = 1;
    std::string params, theorem_params, out;
    double span = 0;
    std::size_t count = 0;
};

int cmd_verify(const VerifyOpts& o) {
    SuiteConfig cfg;
    cfg.seed = o.seed;
    if (!o.params.empty()) cfg.params = params_from(o.params).as_array();
    if (!o.theorem_params.empty()) cfg.theorem_params = params_from(o.theorem_params).as_array();
    if (o.span > 0) cfg.span = o.span;
    if (o.count > 0) {
        if (o.count < 8) throw UsageError("--count must be at least 8");
        cfg.fine_count = o.count;
        cfg.coarse_count = o.count / 2;
    }
    const SuiteResult result = run_suite(cfg);
    std::fputs(format_table(result).c_str(), stdout);
    if (!o.out.empty()) {
        std::ofstream os(o.out, std::ios::binary);
        if (!os) throw Error(Errc::Io, "cannot open " + o.out + " for writing");
        os << report_json(result);
        if (!os) throw Error(Errc::Io, "write failed: " + o.out);
    }
    return result.all_passed() ? 0 : kExitFailedCases;
}

struct ConvolveOpts {
    std::string params = "0,1,-1,0,0,0";
    std::string in, in2, out;
    bool correlate = false;
};

int cmd_convolve(const ConvolveOpts& o) {
    const OlctParams p = params_from(o.params);
    const SampledSignal f = io::load<TimeDomain>(o.in);
    const SampledSignal g = io::load<TimeDomain>(o.in2);
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, "inputs are on different grids");
    if (!p.has_integral_kernel()) throw Error(Errc::DegenerateB, "the chirp weight needs b != 0");
    io::save(o.out, o.correlate ? olct_correlate(f, g, p) : olct_convolve(f, g, p));
    return 0;
}

struct GenerateOpts {
    std::string shape = "gaussian:1";
    double span = 12.8;
    std::size_t count = 1024;
    std::string out;
};

int cmd_generate(const GenerateOpts& o) {
    if (o.count < 2 || o.span <= 0) throw UsageError("need --span > 0 and --count >= 2");
    io::save(o.out, shape_signal(o.shape, UniformGrid::centered(o.span, o.count)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads_from_env();

    CLI::App app{"Offset linear canonical transform toolkit"};
    app.require_subcommand(1, 1);

    TransformOpts topt;
    auto* transform = app.add_subcommand("transform", "Forward or inverse transform of a signal file");
    transform->add_option("--params", topt.params, "a,b,c,d,u0,w0 with ad - bc = 1")->capture_default_str();
    transform->add_option("--in", topt.in, "Input signal (CSV or .bin/.wsig)")->required();
    transform->add_option("--out", topt.out, "Output file")->required();
    transform->add_flag("--inverse", topt.inverse, "Input is a spectrum; reconstruct the signal");
    transform->add_flag("--fast", topt.fast, "Chirp-FFT-chirp evaluation on the induced grid");
    transform->add_flag("--check", topt.check, "Print max |fast - direct| on the induced grid");
    transform->add_option("--span", topt.span, "Output grid half-width override");
    transform->add_option("--count", topt.count, "Output grid sample count override");

    WolctOpts wopt;
    auto* wolct_cmd = app.add_subcommand("wolct", "Windowed transform map");
    wolct_cmd->add_option("--params", wopt.params, "a,b,c,d,u0,w0 with ad - bc = 1")->capture_default_str();
    wolct_cmd->add_option("--in", wopt.in, "Input signal")->required();
    wolct_cmd->add_option("--window", wopt.window, "gaussian:<sigma> | rect:<halfwidth> | file:<path>")
        ->capture_default_str();
    wolct_cmd->add_option("--out", wopt.out, "Map as CSV (u,w,re,im)");
    wolct_cmd->add_option("--pgm", wopt.pgm, "Magnitude image (16-bit PGM) plus <path>.json sidecar");
    wolct_cmd->add_flag("--fast", wopt.fast, "One FFT per window position");
    wolct_cmd->add_option("--wstride", wopt.wstride, "Window shift in samples")->capture_default_str();

    VerifyOpts vopt;
    auto* verify = app.add_subcommand("verify", "Run the identity suite");
    verify->add_option("--seed", vopt.seed, "Seed for the synthesized signals")->capture_default_str();
    verify->add_option("--params", vopt.params, "Parameters for the single-transform identities");
    verify->add_option("--theorem-params", vopt.theorem_params, "Parameters for the convolution/correlation theorems");
    verify->add_option("--span", vopt.span, "Grid half-width");
    verify->add_option("--count", vopt.count, "Fine grid sample count (the coarse grid uses half)");
    verify->add_option("--out", vopt.out, "JSON report path");

    ConvolveOpts copt;
    auto* convolve = app.add_subcommand("convolve", "Chirp-weighted convolution or correlation");
    convolve->add_option("--params", copt.params, "a,b,c,d,u0,w0 with ad - bc = 1")->capture_default_str();
    convolve->add_option("--in", copt.in, "First signal")->required();
    convolve->add_option("--in2", copt.in2, "Second signal")->required();
    convolve->add_option("--out", copt.out, "Output file")->required();
    convolve->add_flag("--correlate", copt.correlate, "Correlation instead of convolution");

    GenerateOpts gopt;
    auto* gen = app.add_subcommand("generate", "Write a synthetic test signal");
    gen->add_option("--shape", gopt.shape, "gaussian:s[:c] | chirp:r[:f] | rect:h | zero, joined by '*'")
        ->capture_default_str();
    gen->add_option("--span", gopt.span, "Grid half-width")->capture_default_str();
    gen->add_option("--count", gopt.count, "Sample count")->capture_default_str();
    gen->add_option("--out", gopt.out, "Output file")->required();

    std::vector<std::string> names;
    for (const auto* sub : app.get_subcommands({})) names.push_back(sub->get_name());
    app.set_config("--config", "", "JSON file mirroring the flags");
    app.config_formatter(std::make_shared<cli::JsonConfig>(names));
    app.allow_config_extras(CLI::config_extras_mode::ignore);

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (transform->parsed()) return cmd_transform(topt);
        if (wolct_cmd->parsed()) return cmd_wolct(wopt);
        if (verify->parsed()) return cmd_verify(vopt);
        if (convolve->parsed()) return cmd_convolve(copt);
        if (gen->parsed()) return cmd_generate(gopt);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
