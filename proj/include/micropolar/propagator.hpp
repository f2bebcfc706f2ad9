#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "micropolar/field.hpp"
#include "micropolar/ops.hpp"
#include "micropolar/symbol.hpp"

namespace micropolar {

namespace detail {

// On the lattice, |xi|^2 takes only the values (2 pi / L)^2 * |k|^2 with
// integer |k|^2, so the scalar components are cached per lattice radius.
class ComponentTable {
public:
    ComponentTable(const MaterialParams& p, const GridSpec& g, double t)
        : p_(p), t_(t), unit_sq_(g.xi_unit() * g.xi_unit()),
          cache_(g.max_lattice_r2() + 1) {}

    const SymbolComponents& operator()(int lattice_r2) {
        auto& slot = cache_[lattice_r2];
        if (!slot) slot = e_components(p_, unit_sq_ * lattice_r2, t_);
        return *slot;
    }

private:
    MaterialParams p_;
    double t_;
    double unit_sq_;
    std::vector<std::optional<SymbolComponents>> cache_;
};

}  // namespace detail

/// Exact linear flow: per-mode multiplication of (u_hat, w_hat) by the
/// semigroup symbol. Preserves Hermitian symmetry and the divergence-free
/// structure of u; the zero mode obeys u_hat(0) const, w_hat(0) *= e^{-4 chi t}.
inline StateSpectral apply_linear(const MaterialParams& p, const StateSpectral& z0,
                                  double t) {
    if (t < 0.0) throw std::invalid_argument("apply_linear: t must be >= 0");
    p.validate();
    if (t == 0.0) return z0;
    const GridSpec& g = z0.grid();
    StateSpectral out(g);
    detail::ComponentTable table(p, g, t);

    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const std::size_t idx = g.index(i, j, k);
                const Vec3d xi = g.xi(i, j, k);
                const double R = norm_sq(xi);
                const Vec3c u0 = z0.u.mode(idx);
                const Vec3c w0 = z0.w.mode(idx);
                if (R == 0.0) {
                    const double dw = std::exp(-4.0 * p.chi * t);
                    out.u.set_mode(idx, u0);
                    out.w.set_mode(idx, {dw * w0[0], dw * w0[1], dw * w0[2]});
                    continue;
                }
                const SymbolComponents& s = table(g.lattice_r2(i, j, k));
                const double heat_u = std::exp(-(p.mu + p.chi) * R * t);

                const cplx udiv = dot(xi, u0) / R;  // longitudinal coefficient
                const cplx wdiv = dot(xi, w0) / R;
                const Vec3c h0 = {w0[0] - xi[0] * wdiv, w0[1] - xi[1] * wdiv,
                                  w0[2] - xi[2] * wdiv};
                const Vec3c ut = {u0[0] - xi[0] * udiv, u0[1] - xi[1] * udiv,
                                  u0[2] - xi[2] * udiv};
                const Vec3c cu = curl_symbol(xi, u0);
                const Vec3c ch = curl_symbol(xi, h0);

                Vec3c u_new, w_new;
                for (int c = 0; c < 3; ++c) {
                    u_new[c] = s.e11 * ut[c] + heat_u * xi[c] * udiv + s.e21 * ch[c];
                    w_new[c] = s.e21 * cu[c] + s.e22 * h0[c] + s.div_factor * xi[c] * wdiv;
                }
                out.u.set_mode(idx, u_new);
                out.w.set_mode(idx, w_new);
            }
    return out;
}

/// Second-order heat-profile asymptotics of the linear flow:
///   u-profile: e^{mu t Delta} u0 + (1/2) curl e^{mu t Delta} w0
///   w-profile: (1/2) curl e^{mu t Delta} u0 - (1/4) Delta e^{mu t Delta} P w0
/// realized per mode as
///   u_hat = e^{-mu t R} (u0 + (1/2) i xi x w0)
///   w_hat = e^{-mu t R} ((1/2) i xi x u0 + (1/4) R P w0).
inline std::pair<SpectralField, SpectralField> heat_profiles(const MaterialParams& p,
                                                             const StateSpectral& z0,
                                                             double t) {
    if (t < 0.0) throw std::invalid_argument("heat_profiles: t must be >= 0");
    p.validate();
    const GridSpec& g = z0.grid();
    SpectralField u_prof(g), w_prof(g);
    detail::for_each_mode(g, [&](std::size_t idx, const Vec3d& xi) {
        const double R = norm_sq(xi);
        const double heat = std::exp(-p.mu * t * R);
        const Vec3c u0 = z0.u.mode(idx);
        const Vec3c w0 = z0.w.mode(idx);
        const Vec3c cw = curl_symbol(xi, w0);
        const Vec3c cu = curl_symbol(xi, u0);
        const Vec3c h0 = transverse_part(xi, w0);
        Vec3c up, wp;
        for (int c = 0; c < 3; ++c) {
            up[c] = heat * (u0[c] + 0.5 * cw[c]);
            wp[c] = heat * (0.5 * cu[c] + 0.25 * R * h0[c]);
        }
        u_prof.set_mode(idx, up);
        w_prof.set_mode(idx, wp);
    });
    return {std::move(u_prof), std::move(w_prof)};
}

}  // namespace micropolar
