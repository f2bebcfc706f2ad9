#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "micropolar/symbol.hpp"
#include "micropolar/util.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Whole-space (R^3) evaluation of the linear flow on closed-form spectral
// data. Norms use the convention ||f||^2_{L^2} = (2 pi)^{-3} int |f_hat|^2.
// ---------------------------------------------------------------------------

/// Closed-form spectral initial data xi -> (u0_hat, w0_hat). u0_hat must be
/// divergence-free; q is the low-frequency exponent of |u0_hat| and sigma
/// the spectral decay scale (both metadata used to pick quadrature windows).
struct ContinuumProfile {
    std::function<Vec3c(const Vec3d&)> u0_hat;
    std::function<Vec3c(const Vec3d&)> w0_hat;
    double q = 0.0;
    double sigma = 1.0;
};

inline ContinuumProfile with_zero_w0(ContinuumProfile prof) {
    prof.w0_hat = [](const Vec3d&) { return Vec3c{}; };
    return prof;
}

inline ContinuumProfile with_zero_u0(ContinuumProfile prof) {
    prof.u0_hat = [](const Vec3d&) { return Vec3c{}; };
    return prof;
}

/// Log-radial x product-Gauss-sphere rule. n_angular Gauss nodes in
/// cos(theta) and 2 n_angular equispaced azimuth nodes; the radial window
/// [r_min, r_max] is integrated with n_radial Gauss nodes in log r.
struct QuadratureSpec {
    double r_min = 1e-6;
    double r_max = 12.0;
    int n_radial = 192;
    int n_angular = 10;

    void validate() const {
        if (!(r_min > 0.0) || !(r_max > r_min))
            throw std::invalid_argument("QuadratureSpec: need 0 < r_min < r_max");
        if (n_radial < 2 || n_angular < 2)
            throw std::invalid_argument("QuadratureSpec: resolution too small");
    }

    QuadratureSpec refined() const {
        QuadratureSpec q = *this;
        q.n_radial *= 2;
        q.n_angular *= 2;
        return q;
    }
};

/// Radially concentrated integrands near xi = 0 call for the log-radial
/// grid; r_min tracks the concentration radius at the latest time of
/// interest and r_max the data's spectral support.
inline QuadratureSpec default_quadrature(double sigma, double t_max) {
    QuadratureSpec q;
    q.r_min = 1e-4 / std::sqrt(1.0 + t_max);
    q.r_max = 12.0 * sigma;
    return q;
}

/// Relative tolerance for the refinement check; MICROPOLAR_QUAD_TOL
/// overrides it (CI escape hatch).
inline double quadrature_tolerance() {
    if (const char* env = std::getenv("MICROPOLAR_QUAD_TOL")) {
        const double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1e-8;
}

struct QuadratureRule {
    std::vector<Vec3d> nodes;
    std::vector<double> weights;  // integrate F over R^3: sum F(node) * weight
};

inline QuadratureRule build_rule(const QuadratureSpec& spec) {
    spec.validate();
    auto [xr, wr] = gauss_legendre(spec.n_radial);
    auto [xp, wp] = gauss_legendre(spec.n_angular);
    const int n_az = 2 * spec.n_angular;
    const double az_w = 2.0 * kPi / n_az;
    const double la = std::log(spec.r_min), lb = std::log(spec.r_max);
    const double half = 0.5 * (lb - la), mid = 0.5 * (la + lb);

    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(spec.n_radial) * spec.n_angular * n_az);
    rule.weights.reserve(rule.nodes.capacity());
    for (int ir = 0; ir < spec.n_radial; ++ir) {
        const double r = std::exp(mid + half * xr[ir]);
        const double wrad = wr[ir] * half * r * r * r;  // r^2 dr = r^3 dlog r
        for (int ip = 0; ip < spec.n_angular; ++ip) {
            const double mu = xp[ip];
            const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            for (int ia = 0; ia < n_az; ++ia) {
                const double phi = az_w * ia;
                rule.nodes.push_back(
                    {r * s * std::cos(phi), r * s * std::sin(phi), r * mu});
                rule.weights.push_back(wrad * wp[ip] * az_w);
            }
        }
    }
    return rule;
}

using FieldHat = std::function<Vec3c(const Vec3d&)>;

inline double integrate_abs_sq(const FieldHat& f, const QuadratureRule& rule) {
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s.add(norm_sq(f(rule.nodes[i])) * rule.weights[i]);
    return s.value();
}

/// Thrown when doubling the quadrature resolution moves a reported norm by
/// more than the declared tolerance.
struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// L^2(R^3) norm of a closed-form spectral field,
/// sqrt((2 pi)^{-3} int |f_hat|^2 dxi), with a refinement check: the value
/// at doubled resolution is reported, and must agree with the base
/// resolution to the declared relative tolerance.
inline double l2_norm_continuum(const FieldHat& f, const QuadratureSpec& spec,
                                bool check_convergence = true) {
    const double inv8pi3 = 1.0 / std::pow(2.0 * kPi, 3);
    const QuadratureRule fine = build_rule(check_convergence ? spec.refined() : spec);
    const double val = std::sqrt(inv8pi3 * integrate_abs_sq(f, fine));
    if (check_convergence) {
        const QuadratureRule base = build_rule(spec);
        const double coarse = std::sqrt(inv8pi3 * integrate_abs_sq(f, base));
        const double tol = quadrature_tolerance();
        if (std::abs(val - coarse) > tol * (std::abs(val) + 1e-300) && val > 0.0)
            throw QuadratureNotConverged(
                "l2_norm_continuum: refinement moved the value by " +
                std::to_string(std::abs(val - coarse) / val) + " relative");
    }
    return val;
}

/// All hatted quantities of the linear flow at one point (xi != 0):
/// u_L, w_L, the Helmholtz part h_L = P w_L, the vorticity
/// Omega_L = i xi x u_L, and E_L = h_L - Omega_L / 2.
struct LinearStateHat {
    Vec3c u;
    Vec3c w;
    Vec3c h;
    Vec3c omega;
    Vec3c e;
};

inline LinearStateHat linear_state_hat(const MaterialParams& p,
                                       const ContinuumProfile& prof, const Vec3d& xi,
                                       double t) {
    const double R = norm_sq(xi);
    if (R == 0.0)
        throw std::invalid_argument("linear_state_hat: xi = 0 handled by the zero-mode limit");
    const SymbolComponents s = e_components(p, R, t);
    const Vec3c u0 = prof.u0_hat(xi);
    const Vec3c w0 = prof.w0_hat(xi);
    const cplx wdiv = dot(xi, w0) / R;
    const Vec3c h0 = {w0[0] - xi[0] * wdiv, w0[1] - xi[1] * wdiv, w0[2] - xi[2] * wdiv};
    const Vec3c cu0 = curl_symbol(xi, u0);
    const Vec3c ch0 = curl_symbol(xi, h0);

    LinearStateHat out;
    for (int c = 0; c < 3; ++c) {
        out.u[c] = s.e11 * u0[c] + s.e21 * ch0[c];
        out.h[c] = s.e21 * cu0[c] + s.e22 * h0[c];
        out.w[c] = out.h[c] + s.div_factor * xi[c] * wdiv;
    }
    out.omega = curl_symbol(xi, out.u);
    for (int c = 0; c < 3; ++c) out.e[c] = out.h[c] - 0.5 * out.omega[c];
    return out;
}

}  // namespace micropolar
