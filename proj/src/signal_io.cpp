#include "wolct/signal_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace wolct::io {

static_assert(std::endian::native == std::endian::little, "binary signal I/O assumes a little-endian host");

namespace {

template <class D>
constexpr const char* axis_name() {
    return std::is_same_v<D, TimeDomain> ? "t" : "u";
}

constexpr std::array<char, 4> kMagic{'W', 'S', 'I', 'G'};
constexpr std::uint8_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    os.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& is) {
    char bytes[sizeof(T)];
    if (!is.read(bytes, sizeof(T))) throw Error(Errc::Format, "truncated binary signal");
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

double to_double(const std::string& s, std::size_t row) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw Error(Errc::Format, "row " + std::to_string(row) + ": not a number: " + s);
    return v;
}

}  // namespace

SignalFormat format_for(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return (ext == ".bin" || ext == ".wsig") ? SignalFormat::Binary : SignalFormat::Csv;
}

template <class D>
void write_csv(std::ostream& os, const Sampled<D>& s) {
    os << axis_name<D>() << ",re,im\n";
    char buf[96];
    for (std::size_t j = 0; j < s.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.grid().point(j), s[j].real(), s[j].imag());
        os << buf;
    }
}

template <class D>
Sampled<D> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(Errc::Format, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_row(line);
    if (header.size() != 3 || (header[0] != "t" && header[0] != "u") || header[1] != "re" || header[2] != "im") {
        throw Error(Errc::Format, "expected header 't,re,im' or 'u,re,im', got '" + line + "'");
    }
    std::vector<double> axis;
    std::vector<cplx> values;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_row(line);
        if (f.size() != 3) throw Error(Errc::Format, "row " + std::to_string(row) + ": expected 3 fields");
        axis.push_back(to_double(f[0], row));
        values.emplace_back(to_double(f[1], row), to_double(f[2], row));
    }
    if (axis.size() < 2) throw Error(Errc::Format, "CSV needs at least 2 samples");
    const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
    UniformGrid grid(axis.front(), step, axis.size());
    for (std::size_t j = 0; j < axis.size(); ++j) {
        if (std::abs(axis[j] - grid.point(j)) > 1e-9 * step) {
            throw Error(Errc::Format, "non-uniform sample spacing at row " + std::to_string(j + 2));
        }
    }
    return Sampled<D>(grid, std::move(values));
}

template <class D>
void write_binary(std::ostream& os, const Sampled<D>& s) {
    os.write(kMagic.data(), kMagic.size());
    put<std::uint8_t>(os, kVersion);
    put<double>(os, s.grid().start());
    put<double>(os, s.grid().step());
    put<std::uint64_t>(os, s.size());
    for (const cplx& z : s.values()) {
        put<double>(os, z.real());
        put<double>(os, z.imag());
    }
}

template <class D>
Sampled<D> read_binary(std::istream& is) {
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw Error(Errc::Format, "bad magic, expected WSIG");
    const auto version = get<std::uint8_t>(is);
    if (version != kVersion) throw Error(Errc::Format, "unsupported WSIG version " + std::to_string(version));
    const double start = get<double>(is);
    const double step = get<double>(is);
    const auto count = get<std::uint64_t>(is);
    if (count > (std::uint64_t{1} << 32)) throw Error(Errc::Format, "implausible sample count");
    std::vector<cplx> values(count);
    for (auto& z : values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        z = {re, im};
    }
    return Sampled<D>(UniformGrid(start, step, count), std::move(values));
}

template <class D>
void save(const std::filesystem::path& path, const Sampled<D>& s) {
    const auto fmt = format_for(path);
    std::ofstream os(path, fmt == SignalFormat::Binary ? std::ios::binary : std::ios::out);
    if (!os) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
    if (fmt == SignalFormat::Binary) {
        write_binary(os, s);
    } else {
        write_csv(os, s);
    }
    if (!os) throw Error(Errc::Io, "write failed: " + path.string());
}

template <class D>
Sampled<D> load(const std::filesystem::path& path) {
    const auto fmt = format_for(path);
    std::ifstream is(path, fmt == SignalFormat::Binary ? std::ios::binary : std::ios::in);
    if (!is) throw Error(Errc::Io, "cannot open " + path.string());
    return fmt == SignalFormat::Binary ? read_binary<D>(is) : read_csv<D>(is);
}

#define WOLCT_INSTANTIATE_IO(D)                                      \
    template void write_csv<D>(std::ostream&, const Sampled<D>&);    \
    template Sampled<D> read_csv<D>(std::istream&);                  \
    template void write_binary<D>(std::ostream&, const Sampled<D>&); \
    template Sampled<D> read_binary<D>(std::istream&);               \
    template void save<D>(const std::filesystem::path&, const Sampled<D>&); \
    template Sampled<D> load<D>(const std::filesystem::path&);

WOLCT_INSTANTIATE_IO(TimeDomain)
WOLCT_INSTANTIATE_IO(FrequencyDomain)

#undef WOLCT_INSTANTIATE_IO

}  // namespace wolct::io
