#pragma once

#include <filesystem>
#include <iosfwd>

#include "wolct/windowed.hpp"

namespace wolct::io {

/// Header "u,w,re,im"; rows ordered u-major, w-minor.
void write_tfmap_csv(std::ostream& os, const TFMap& V);
void save_tfmap_csv(const std::filesystem::path& path, const TFMap& V);

/// 16-bit binary PGM (P5) of |V|, linearly scaled so max|V| maps to 65535.
/// Columns follow w, rows follow u with the highest u in the first row.
/// Writes `<path>.json` describing the scaling and axes. Returns the scale factor.
double save_tfmap_pgm(const std::filesystem::path& path, const TFMap& V);

}  // namespace wolct::io
