#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "micropolar/util.hpp"

namespace micropolar {

/// Cubic periodic grid with n points per axis on a torus of period L.
/// The wavenumber lattice is (2*pi/L) * {-n/2+1, ..., n/2} per axis in
/// standard FFT ordering, i.e. index j maps to the integer frequency
/// j <= n/2 ? j : j - n.
struct GridSpec {
    int n = 0;
    double box_length = 0.0;

    void validate() const {
        if (n < 4) throw std::invalid_argument("GridSpec: n must be >= 4");
        if (!(box_length > 0.0))
            throw std::invalid_argument("GridSpec: box_length must be > 0");
    }

    std::size_t num_modes() const {
        return static_cast<std::size_t>(n) * n * n;
    }

    // Integer frequency of axis index j.
    int freq(int j) const { return j <= n / 2 ? j : j - n; }

    // Axis index of integer frequency k (k in (-n/2, n/2]).
    int index_of_freq(int k) const { return k >= 0 ? k : k + n; }

    double xi_unit() const { return 2.0 * kPi / box_length; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    // Linear index of the mode at -k given the axis indices of k.
    std::size_t conj_index(int i, int j, int k) const {
        auto neg = [this](int a) { return a == 0 ? 0 : n - a; };
        return index(neg(i), neg(j), neg(k));
    }

    Vec3d xi(int i, int j, int k) const {
        const double s = xi_unit();
        return {s * freq(i), s * freq(j), s * freq(k)};
    }

    // Squared lattice radius |k|^2 (integer) of the mode at (i,j,k).
    int lattice_r2(int i, int j, int k) const {
        const int a = freq(i), b = freq(j), c = freq(k);
        return a * a + b * b + c * c;
    }

    int max_lattice_r2() const {
        const int h = n / 2;
        return 3 * h * h;
    }

    bool operator==(const GridSpec&) const = default;
};

/// Full wavenumber lattice in FFT ordering (row-major over axis indices).
inline std::vector<Vec3d> wavenumbers(const GridSpec& g) {
    g.validate();
    std::vector<Vec3d> out;
    out.reserve(g.num_modes());
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) out.push_back(g.xi(i, j, k));
    return out;
}

}  // namespace micropolar
