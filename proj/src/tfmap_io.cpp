#include "wolct/tfmap_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "wolct/error.hpp"

namespace wolct::io {

namespace {

nlohmann::ordered_json grid_json(const UniformGrid& g) {
    return {{"start", g.start()}, {"step", g.step()}, {"count", g.count()}};
}

}  // namespace

void write_tfmap_csv(std::ostream& os, const TFMap& V) {
    os << "u,w,re,im\n";
    char buf[128];
    for (std::size_t k = 0; k < V.rows(); ++k) {
        for (std::size_t l = 0; l < V.cols(); ++l) {
            const cplx z = V(k, l);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", V.ugrid().point(k), V.wgrid().point(l),
                          z.real(), z.imag());
            os << buf;
        }
    }
}

void save_tfmap_csv(const std::filesystem::path& path, const TFMap& V) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
    write_tfmap_csv(os, V);
    if (!os) throw Error(Errc::Io, "write failed: " + path.string());
}

double save_tfmap_pgm(const std::filesystem::path& path, const TFMap& V) {
    double peak = 0;
    for (const cplx& z : V.values()) peak = std::max(peak, std::abs(z));
    const double scale = peak > 0 ? 65535.0 / peak : 0.0;

    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
    os << "P5\n" << V.cols() << ' ' << V.rows() << "\n65535\n";
    for (std::size_t r = 0; r < V.rows(); ++r) {
        const std::size_t k = V.rows() - 1 - r;
        for (std::size_t l = 0; l < V.cols(); ++l) {
            const auto level = static_cast<std::uint16_t>(std::lround(std::min(65535.0, std::abs(V(k, l)) * scale)));
            // PGM stores 16-bit samples most significant byte first.
            const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xff)};
            os.write(bytes, 2);
        }
    }
    if (!os) throw Error(Errc::Io, "write failed: " + path.string());

    nlohmann::ordered_json side;
    side["schema"] = 1;
    side["image"] = path.filename().string();
    side["width"] = V.cols();
    side["height"] = V.rows();
    side["max_magnitude"] = peak;
    side["scale"] = scale;
    side["column_axis"] = "w";
    side["row_axis"] = "u";
    side["first_row_u"] = V.ugrid().last();
    side["ugrid"] = grid_json(V.ugrid());
    side["wgrid"] = grid_json(V.wgrid());
    auto side_path = path;
    side_path += ".json";
    std::ofstream js(side_path);
    if (!js) throw Error(Errc::Io, "cannot open " + side_path.string() + " for writing");
    js << side.dump(2) << '\n';
    return scale;
}

}  // namespace wolct::io
