#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "wolct/error.hpp"

namespace wolct {

using cplx = std::complex<double>;

/// Points start + j*step for 0 <= j < count.
class UniformGrid {
public:
    UniformGrid(double start, double step, std::size_t count);

    /// [-span, span) with `count` points; contains 0 when count is even.
    static UniformGrid centered(double span, std::size_t count);

    double start() const noexcept { return start_; }
    double step() const noexcept { return step_; }
    std::size_t count() const noexcept { return count_; }
    double point(std::size_t j) const noexcept { return start_ + static_cast<double>(j) * step_; }
    double last() const noexcept { return point(count_ - 1); }

    /// Same lattice up to 1e-9 of a step.
    bool matches(const UniformGrid& other) const noexcept;
    /// True when -t_j lies on the lattice for every j (2*start/step integral).
    bool reflection_invariant() const noexcept;
    /// True when 0 is a lattice point (start/step integral).
    bool contains_origin() const noexcept;

    /// Integer number of steps equal to `shift`, or LatticeViolation.
    long steps_for(double shift) const;

private:
    double start_;
    double step_;
    std::size_t count_;
};

struct TimeDomain {};
struct FrequencyDomain {};

/// Complex samples on a uniform grid. Immutable once built; every value finite.
template <class Domain>
class Sampled {
public:
    Sampled(UniformGrid grid, std::vector<cplx> values);
    explicit Sampled(UniformGrid grid) : grid_(grid), values_(grid.count()) {}

    const UniformGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cplx& operator[](std::size_t j) const noexcept { return values_[j]; }

    /// Value at index j, zero outside [0, count).
    cplx at_or_zero(long j) const noexcept {
        return (j < 0 || j >= static_cast<long>(values_.size())) ? cplx{} : values_[static_cast<std::size_t>(j)];
    }

    std::vector<cplx> take_values() && { return std::move(values_); }

private:
    UniformGrid grid_;
    std::vector<cplx> values_;
};

using SampledSignal = Sampled<TimeDomain>;
using OlctSpectrum = Sampled<FrequencyDomain>;

extern template class Sampled<TimeDomain>;
extern template class Sampled<FrequencyDomain>;

// Test signal shapes.
struct Gaussian {
    double sigma = 1.0;
    double center = 0.0;
};
/// exp(i*rate*t^2/2 + i*freq*t)
struct Chirp {
    double rate = 0.0;
    double freq = 0.0;
};
/// 1 on |t| <= halfwidth.
struct Rect {
    double halfwidth = 1.0;
};
using Shape = std::variant<Gaussian, Chirp, Rect>;

SampledSignal generate(const Shape& shape, const UniformGrid& grid);

/// Riemann sum  sum_j f_j conj(g_j) step.
cplx inner_product(std::span<const cplx> f, std::span<const cplx> g, double step);

template <class D>
cplx inner_product(const Sampled<D>& f, const Sampled<D>& g) {
    if (!f.grid().matches(g.grid())) throw Error(Errc::GridMismatch, "inner_product: grids differ");
    return inner_product(f.values(), g.values(), f.grid().step());
}

template <class D>
double l2_norm(const Sampled<D>& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

/// T_{t0} with t0 = steps*step; vacated samples are zero.
SampledSignal shift(const SampledSignal& f, long steps);
/// M_s: f(t) exp(i s t).
SampledSignal modulate(const SampledSignal& f, double s);
/// P: f(-t). Samples whose mirror falls off the grid become zero.
SampledSignal parity(const SampledSignal& f);
SampledSignal conj_signal(const SampledSignal& f);

SampledSignal multiply(const SampledSignal& f, const SampledSignal& g);
/// alpha*f + beta*g
SampledSignal combine(cplx alpha, const SampledSignal& f, cplx beta, const SampledSignal& g);

}  // namespace wolct
