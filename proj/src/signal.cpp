#include "wolct/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace wolct {

namespace {

constexpr double kLatticeTol = 1e-9;

bool near_integer(double x) { return std::abs(x - std::round(x)) <= kLatticeTol; }

}  // namespace

UniformGrid::UniformGrid(double start, double step, std::size_t count)
    : start_(start), step_(step), count_(count) {
    if (!(step > 0) || !std::isfinite(step) || !std::isfinite(start)) {
        throw Error(Errc::Format, "grid step must be positive and finite");
    }
    if (count < 2) throw Error(Errc::Format, "grid needs at least 2 points");
}

UniformGrid UniformGrid::centered(double span, std::size_t count) {
    if (count < 2) throw Error(Errc::Format, "grid needs at least 2 points");
    return UniformGrid(-span, 2 * span / static_cast<double>(count), count);
}

bool UniformGrid::matches(const UniformGrid& o) const noexcept {
    return count_ == o.count_ && std::abs(step_ - o.step_) <= kLatticeTol * step_ &&
           std::abs(start_ - o.start_) <= kLatticeTol * step_;
}

bool UniformGrid::reflection_invariant() const noexcept { return near_integer(2 * start_ / step_); }

bool UniformGrid::contains_origin() const noexcept { return near_integer(start_ / step_); }

long UniformGrid::steps_for(double shift) const {
    const double k = shift / step_;
    if (!near_integer(k)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "shift %.12g is not a multiple of the step %.12g", shift, step_);
        throw Error(Errc::LatticeViolation, buf);
    }
    return std::lround(k);
}

template <class D>
Sampled<D>::Sampled(UniformGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) {
        throw Error(Errc::GridMismatch, "sample count " + std::to_string(values_.size()) +
                                            " does not match grid count " + std::to_string(grid_.count()));
    }
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(Errc::NonFiniteSample, "signal contains NaN or Inf");
        }
    }
}

template class Sampled<TimeDomain>;
template class Sampled<FrequencyDomain>;

SampledSignal generate(const Shape& shape, const UniformGrid& grid) {
    std::vector<cplx> v(grid.count());
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Gaussian>) {
                if (!(s.sigma > 0)) throw Error(Errc::InvalidShapeParam, "gaussian sigma must be > 0");
                for (std::size_t j = 0; j < v.size(); ++j) {
                    const double x = (grid.point(j) - s.center) / s.sigma;
                    v[j] = std::exp(-0.5 * x * x);
                }
            } else if constexpr (std::is_same_v<S, Chirp>) {
                for (std::size_t j = 0; j < v.size(); ++j) {
                    const double t = grid.point(j);
                    v[j] = std::polar(1.0, s.rate * t * t / 2 + s.freq * t);
                }
            } else {
                if (!(s.halfwidth > 0)) throw Error(Errc::InvalidShapeParam, "rect halfwidth must be > 0");
                for (std::size_t j = 0; j < v.size(); ++j) {
                    v[j] = std::abs(grid.point(j)) <= s.halfwidth ? 1.0 : 0.0;
                }
            }
        },
        shape);
    return SampledSignal(grid, std::move(v));
}

cplx inner_product(std::span<const cplx> f, std::span<const cplx> g, double step) {
    if (f.size() != g.size()) throw Error(Errc::GridMismatch, "inner_product: lengths differ");
    double re = 0, im = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        // f * conj(g)
        re += f[j].real() * g[j].real() + f[j].imag() * g[j].imag();
        im += f[j].imag() * g[j].real() - f[j].real() * g[j].imag();
    }
    return {re * step, im * step};
}

SampledSignal shift(const SampledSignal& f, long steps) {
    const long n = static_cast<long>(f.size());
    if (std::abs(steps) >= n) throw Error(Errc::ShiftOutOfRange, "shift exceeds grid length");
    std::vector<cplx> v(f.size());
    for (long j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = f.at_or_zero(j - steps);
    return SampledSignal(f.grid(), std::move(v));
}

SampledSignal modulate(const SampledSignal& f, double s) {
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * std::polar(1.0, s * f.grid().point(j));
    return SampledSignal(f.grid(), std::move(v));
}

SampledSignal parity(const SampledSignal& f) {
    const UniformGrid& g = f.grid();
    if (!g.reflection_invariant()) {
        throw Error(Errc::AsymmetricGrid, "parity needs a lattice symmetric under t -> -t");
    }
    // -t_j = start + m*step  =>  m = -(2*start/step) - j
    const long offset = std::lround(-2 * g.start() / g.step());
    std::vector<cplx> v(f.size());
    for (long j = 0; j < static_cast<long>(v.size()); ++j) v[static_cast<std::size_t>(j)] = f.at_or_zero(offset - j);
    return SampledSignal(g, std::move(v));
}

SampledSignal conj_signal(const SampledSignal& f) {
    std::vector<cplx> v(f.size());
    std::transform(f.values().begin(), f.values().end(), v.begin(), [](cplx z) { return std::conj(z); });
    return SampledSignal(f.grid(), std::move(v));
}

SampledSignal multiply(const SampledSignal& f, const SampledSignal& g) {
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, "multiply: grids differ");
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * g[j];
    return SampledSignal(f.grid(), std::move(v));
}

SampledSignal combine(cplx alpha, const SampledSignal& f, cplx beta, const SampledSignal& g) {
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, "combine: grids differ");
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = alpha * f[j] + beta * g[j];
    return SampledSignal(f.grid(), std::move(v));
}

}  // namespace wolct
