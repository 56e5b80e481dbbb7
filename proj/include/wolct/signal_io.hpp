#pragma once

#include <filesystem>
#include <iosfwd>

#include "wolct/signal.hpp"

namespace wolct::io {

// CSV: header "t,re,im" (signals) or "u,re,im" (spectra), one row per sample.
// Binary: "WSIG", u8 version 1, f64 start, f64 step, u64 count, then count
// (re, im) f64 pairs, all little-endian.

enum class SignalFormat { Csv, Binary };

/// Picks Binary for ".bin"/".wsig" extensions, Csv otherwise.
SignalFormat format_for(const std::filesystem::path& path);

template <class D>
void write_csv(std::ostream& os, const Sampled<D>& s);
template <class D>
Sampled<D> read_csv(std::istream& is);

template <class D>
void write_binary(std::ostream& os, const Sampled<D>& s);
template <class D>
Sampled<D> read_binary(std::istream& is);

template <class D>
void save(const std::filesystem::path& path, const Sampled<D>& s);
template <class D>
Sampled<D> load(const std::filesystem::path& path);

}  // namespace wolct::io
