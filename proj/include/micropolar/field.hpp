#pragma once
#include <utility>

#include <cmath>
#include <vector>

#include "micropolar/grid.hpp"
#include "micropolar/util.hpp"

namespace micropolar {

/// Three-component vector field stored as normalized Fourier-series
/// coefficients on the lattice of GridSpec, in FFT ordering.
///
/// Invariants: coefficients at -xi are the conjugates of those at xi
/// (the physical field is real), and all amplitudes are finite.
struct SpectralField {
    GridSpec grid;
    std::array<std::vector<cplx>, 3> comp;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g) {
        g.validate();
        for (auto& c : comp) c.assign(g.num_modes(), cplx(0.0, 0.0));
    }

    cplx& at(int c, std::size_t idx) { return comp[c][idx]; }
    const cplx& at(int c, std::size_t idx) const { return comp[c][idx]; }

    Vec3c mode(std::size_t idx) const {
        return {comp[0][idx], comp[1][idx], comp[2][idx]};
    }
    void set_mode(std::size_t idx, const Vec3c& v) {
        comp[0][idx] = v[0];
        comp[1][idx] = v[1];
        comp[2][idx] = v[2];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : comp)
            for (const auto& z : c) m = std::max(m, std::abs(z));
        return m;
    }

    bool all_finite() const {
        for (const auto& c : comp)
            for (const auto& z : c)
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    // Largest violation of f(-xi) = conj(f(xi)) over the lattice.
    double hermitian_defect() const {
        double m = 0.0;
        const int n = grid.n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::size_t a = grid.index(i, j, k);
                    const std::size_t b = grid.conj_index(i, j, k);
                    for (int c = 0; c < 3; ++c)
                        m = std::max(m, std::abs(comp[c][a] - std::conj(comp[c][b])));
                }
        return m;
    }
};

/// Torus state z = (u, w); u is divergence-free.
struct StateSpectral {
    SpectralField u;
    SpectralField w;

    StateSpectral() = default;
    explicit StateSpectral(const GridSpec& g) : u(g), w(g) {}
    StateSpectral(SpectralField u_, SpectralField w_)
        : u(std::move(u_)), w(std::move(w_)) {}

    const GridSpec& grid() const { return u.grid; }
};

}  // namespace micropolar
