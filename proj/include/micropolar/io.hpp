#pragma once
#include <cmath>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "micropolar/field.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// MPOLAR1 binary snapshot format (little-endian):
//   magic "MPOLAR1\0", u32 n, f64 L, f64 time,
//   then 6 * n^3 complex128 values: u1, u2, u3, w1, w2, w3 in lattice
//   row-major order.
// ---------------------------------------------------------------------------

inline constexpr char kMpolarMagic[8] = {'M', 'P', 'O', 'L', 'A', 'R', '1', '\0'};

static_assert(sizeof(double) == 8, "MPOLAR1 requires 8-byte IEEE doubles");

struct Snapshot {
    StateSpectral state;
    double time = 0.0;
};

inline void write_mpolar1(const std::string& path, const StateSpectral& z, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_mpolar1: cannot open " + path);
    out.write(kMpolarMagic, 8);
    const std::uint32_t n = static_cast<std::uint32_t>(z.grid().n);
    const double L = z.grid().box_length;
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&L), 8);
    out.write(reinterpret_cast<const char*>(&time), 8);
    for (const SpectralField* f : {&z.u, &z.w})
        for (int c = 0; c < 3; ++c)
            out.write(reinterpret_cast<const char*>(f->comp[c].data()),
                      static_cast<std::streamsize>(f->comp[c].size() * sizeof(cplx)));
    if (!out) throw std::runtime_error("write_mpolar1: write failed for " + path);
}

inline Snapshot read_mpolar1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_mpolar1: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMpolarMagic, 8) != 0)
        throw std::runtime_error("read_mpolar1: bad magic in " + path);
    std::uint32_t n = 0;
    double L = 0.0;
    Snapshot snap;
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&L), 8);
    in.read(reinterpret_cast<char*>(&snap.time), 8);
    if (!in || n < 4 || !(L > 0.0))
        throw std::runtime_error("read_mpolar1: bad header in " + path);
    snap.state = StateSpectral(GridSpec{static_cast<int>(n), L});
    for (SpectralField* f : {&snap.state.u, &snap.state.w})
        for (int c = 0; c < 3; ++c)
            in.read(reinterpret_cast<char*>(f->comp[c].data()),
                    static_cast<std::streamsize>(f->comp[c].size() * sizeof(cplx)));
    if (!in) throw std::runtime_error("read_mpolar1: truncated payload in " + path);
    return snap;
}

// ---------------------------------------------------------------------------
// CSV emission. Numbers are printed with %.17g so identical runs produce
// byte-identical files.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]))
                throw std::runtime_error("CsvWriter: refusing to emit a non-finite value");
            out_ << (i ? "," : "") << format_double(values[i]);
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

inline void ensure_dir(const std::string& path) {
    std::filesystem::create_directories(path);
}

}  // namespace micropolar
