#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "micropolar/field.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Fourier-side vector calculus on the periodic lattice. All operations are
// pure: they take fields by const reference and return new values.
// ---------------------------------------------------------------------------

namespace detail {

template <typename Fn>
void for_each_mode(const GridSpec& g, Fn&& fn) {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) fn(g.index(i, j, k), g.xi(i, j, k));
}

}  // namespace detail

/// curl in Fourier space: v -> i xi x v per mode. Output is divergence-free
/// by construction.
inline SpectralField curl_hat(const SpectralField& f) {
    SpectralField out(f.grid);
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        out.set_mode(idx, curl_symbol(xi, f.mode(idx)));
    });
    return out;
}

/// divergence in Fourier space: per-mode i xi . v.
inline std::vector<cplx> div_hat(const SpectralField& f) {
    std::vector<cplx> out(f.grid.num_modes());
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        out[idx] = cplx(0, 1) * dot(xi, f.mode(idx));
    });
    return out;
}

/// Leray projection v -> v - xi (xi.v)/|xi|^2; the xi = 0 mode is left
/// unchanged (the mean of a divergence-free field is unconstrained).
inline SpectralField leray_project(const SpectralField& f) {
    SpectralField out(f.grid);
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        out.set_mode(idx, transverse_part(xi, f.mode(idx)));
    });
    return out;
}

/// Sharp spherical frequency truncation E_n: zero all modes with lattice
/// radius |k| > n_cut, i.e. |xi| > n_cut * (2 pi / L).
inline SpectralField truncate(const SpectralField& f, int n_cut) {
    if (n_cut < 0) throw std::invalid_argument("truncate: n_cut must be >= 0");
    SpectralField out(f.grid);
    const GridSpec& g = f.grid;
    const long long r2max = static_cast<long long>(n_cut) * n_cut;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const std::size_t idx = g.index(i, j, k);
                if (g.lattice_r2(i, j, k) <= r2max) out.set_mode(idx, f.mode(idx));
            }
    return out;
}

/// Mollification J_eps as the Gaussian Fourier multiplier
/// exp(-eps^2 |xi|^2 / 2): real, even, in (0,1], equal to 1 at xi = 0,
/// and the identity at eps = 0.
inline SpectralField mollify(const SpectralField& f, double eps) {
    if (eps < 0.0) throw std::invalid_argument("mollify: eps must be >= 0");
    SpectralField out(f.grid);
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        const double m = std::exp(-0.5 * eps * eps * norm_sq(xi));
        Vec3c v = f.mode(idx);
        out.set_mode(idx, {m * v[0], m * v[1], m * v[2]});
    });
    return out;
}

/// Squared L^2(torus) norm, L^3 * sum |f_hat|^2 (Plancherel for the
/// normalized-coefficient convention).
inline double l2_norm_sq(const SpectralField& f) {
    KahanSum s;
    for (const auto& c : f.comp)
        for (const auto& z : c) s.add(std::norm(z));
    const double L = f.grid.box_length;
    return L * L * L * s.value();
}

inline double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

/// Same, for a scalar coefficient array on the same grid (used for div w).
inline double l2_norm_sq_scalar(const GridSpec& g, const std::vector<cplx>& f) {
    KahanSum s;
    for (const auto& z : f) s.add(std::norm(z));
    const double L = g.box_length;
    return L * L * L * s.value();
}

/// Squared homogeneous H^1 seminorm: L^3 * sum |xi|^2 |f_hat|^2.
inline double grad_norm_sq(const SpectralField& f) {
    KahanSum s;
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        s.add(norm_sq(xi) * norm_sq(f.mode(idx)));
    });
    const double L = f.grid.box_length;
    return L * L * L * s.value();
}

/// Real Plancherel inner product L^3 * sum Re(f . conj(g)).
inline double inner_l2(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner_l2: grid mismatch");
    KahanSum s;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < f.comp[c].size(); ++i)
            s.add((f.comp[c][i] * std::conj(g.comp[c][i])).real());
    const double L = f.grid.box_length;
    return L * L * L * s.value();
}

/// Largest |i xi . f_hat| over modes; zero for divergence-free fields.
inline double max_divergence(const SpectralField& f) {
    double m = 0.0;
    detail::for_each_mode(f.grid, [&](std::size_t idx, const Vec3d& xi) {
        m = std::max(m, std::abs(dot(xi, f.mode(idx))));
    });
    return m;
}

inline SpectralField axpy(double a, const SpectralField& x, const SpectralField& y) {
    SpectralField out(x.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < x.comp[c].size(); ++i)
            out.comp[c][i] = a * x.comp[c][i] + y.comp[c][i];
    return out;
}

inline SpectralField scaled(double a, const SpectralField& x) {
    SpectralField out(x.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < x.comp[c].size(); ++i)
            out.comp[c][i] = a * x.comp[c][i];
    return out;
}

inline double state_norm_sq(const StateSpectral& z) {
    return l2_norm_sq(z.u) + l2_norm_sq(z.w);
}

inline double state_distance(const StateSpectral& a, const StateSpectral& b) {
    KahanSum s;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < a.u.comp[c].size(); ++i)
            s.add(std::norm(a.u.comp[c][i] - b.u.comp[c][i]));
        for (std::size_t i = 0; i < a.w.comp[c].size(); ++i)
            s.add(std::norm(a.w.comp[c][i] - b.w.comp[c][i]));
    }
    const double L = a.grid().box_length;
    return std::sqrt(L * L * L * s.value());
}

}  // namespace micropolar
