#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "micropolar/constants.hpp"
#include "micropolar/continuum.hpp"

namespace micropolar {

/// Time series of a positive quantity with an ordinary-least-squares
/// power-law fit of log(value) against log(t), restricted to
/// [window_lo, window_hi].
struct DecayReport {
    std::vector<double> times;
    std::vector<double> values;
    double fitted_slope = 0.0;
    double slope_stderr = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

inline void fit_power_law(DecayReport& rep, double window_lo, double window_hi) {
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        const double t = rep.times[i], v = rep.values[i];
        if (t < window_lo || t > window_hi || !(v > 0.0)) continue;
        lx.push_back(std::log(t));
        ly.push_back(std::log(v));
    }
    const std::size_t m = lx.size();
    if (m < 3) throw std::invalid_argument("fit_power_law: fewer than 3 points in window");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    rep.fitted_slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = ly[i] - my - rep.fitted_slope * (lx[i] - mx);
        ssr += resid * resid;
    }
    rep.slope_stderr = m > 2 ? std::sqrt(ssr / (m - 2) / sxx) : 0.0;
}

inline DecayReport make_report(std::vector<double> times, std::vector<double> values,
                               double window_lo, double window_hi) {
    DecayReport rep;
    rep.times = std::move(times);
    rep.values = std::move(values);
    fit_power_law(rep, window_lo, window_hi);
    return rep;
}

namespace detail {

struct LinearNormsSq {
    double u, w, h, omega, e;  // squared L^2 norms
};

// One pass over a rule: all five squared norms of the linear state at time t.
inline LinearNormsSq linear_norms_sq(const MaterialParams& p,
                                     const ContinuumProfile& prof, double t,
                                     const QuadratureRule& rule) {
    KahanSum su, sw, sh, so, se;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const LinearStateHat st = linear_state_hat(p, prof, rule.nodes[i], t);
        const double wgt = rule.weights[i];
        su.add(norm_sq(st.u) * wgt);
        sw.add(norm_sq(st.w) * wgt);
        sh.add(norm_sq(st.h) * wgt);
        so.add(norm_sq(st.omega) * wgt);
        se.add(norm_sq(st.e) * wgt);
    }
    const double c = 1.0 / std::pow(2.0 * kPi, 3);
    return {c * su.value(), c * sw.value(), c * sh.value(), c * so.value(),
            c * se.value()};
}

// abs_floor covers cancellation-limited values (differences of much larger
// quantities): below it, disagreement between the rules is rounding noise,
// not resolution.
inline void check_pair(double fine, double base, const std::string& what,
                       double abs_floor = 0.0) {
    const double tol = quadrature_tolerance();
    if (fine > 0.0 && std::abs(fine - base) > tol * fine + abs_floor)
        throw QuadratureNotConverged(what + ": refinement moved the value by " +
                                     std::to_string(std::abs(fine - base) / fine) +
                                     " relative");
}

}  // namespace detail

/// Default fit window; earlier times are contaminated by transients, later
/// ones by the quadrature floor.
inline constexpr double kFitWindowLo = 1e2;
inline constexpr double kFitWindowHi = 1e4;

/// Squared-norm decay curves of the linear flow: ||u_L||^2, ||w_L||^2,
/// ||h_L||^2, ||grad u_L||^2 (= ||Omega_L||^2), ||E_L||^2 and the enstrophy
/// functional F = ||E_L||^2 + a ||Omega_L||^2, each with a power-law fit.
inline std::map<std::string, DecayReport> decay_curves(const MaterialParams& p,
                                                       const ContinuumProfile& prof,
                                                       const std::vector<double>& times,
                                                       const QuadratureSpec& quad) {
    if (times.empty()) throw std::invalid_argument("decay_curves: empty time grid");
    const ConstantsLedger L = constants_ledger(p);
    const QuadratureRule fine = build_rule(quad.refined());
    const QuadratureRule base = build_rule(quad);

    std::map<std::string, std::vector<double>> vals;
    for (double t : times) {
        const auto nf = detail::linear_norms_sq(p, prof, t, fine);
        const auto nb = detail::linear_norms_sq(p, prof, t, base);
        detail::check_pair(nf.u, nb.u, "decay_curves(u_L)");
        detail::check_pair(nf.w, nb.w, "decay_curves(w_L)");
        vals["u_L_sq"].push_back(nf.u);
        vals["w_L_sq"].push_back(nf.w);
        vals["h_L_sq"].push_back(nf.h);
        vals["grad_u_L_sq"].push_back(nf.omega);
        vals["E_L_sq"].push_back(nf.e);
        vals["F"].push_back(nf.e + L.a * nf.omega);
    }
    const double lo = std::max(kFitWindowLo, times.front());
    const double hi = std::min(kFitWindowHi, times.back());
    std::map<std::string, DecayReport> out;
    for (auto& [name, v] : vals) out[name] = make_report(times, std::move(v), lo, hi);
    return out;
}

/// Error curves against the asymptotic heat profiles (valid range t >= 1):
/// ||u_L - u_profile|| and ||w_L - w_profile|| with fitted slopes.
struct ProfileErrorReports {
    DecayReport u_error;
    DecayReport w_error;
};

inline ProfileErrorReports profile_error_curves(const MaterialParams& p,
                                                const ContinuumProfile& prof,
                                                const std::vector<double>& times,
                                                const QuadratureSpec& quad) {
    for (double t : times)
        if (t < 1.0)
            throw std::invalid_argument("profile_error_curves: defined for t >= 1 only");
    const QuadratureRule fine = build_rule(quad.refined());
    const QuadratureRule base = build_rule(quad);
    const double c = 1.0 / std::pow(2.0 * kPi, 3);

    struct ErrNorms {
        double u_err, w_err, u_scale, w_scale;
    };
    auto errors_at = [&](double t, const QuadratureRule& rule) {
        KahanSum eu, ew, su, sw;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const Vec3d& xi = rule.nodes[i];
            const double R = norm_sq(xi);
            const double heat = std::exp(-p.mu * t * R);
            const LinearStateHat st = linear_state_hat(p, prof, xi, t);
            const Vec3c u0 = prof.u0_hat(xi);
            const Vec3c w0 = prof.w0_hat(xi);
            const Vec3c cw0 = curl_symbol(xi, w0);
            const Vec3c cu0 = curl_symbol(xi, u0);
            const Vec3c h0 = transverse_part(xi, w0);
            double du = 0.0, dw = 0.0;
            for (int k = 0; k < 3; ++k) {
                du += std::norm(st.u[k] - heat * (u0[k] + 0.5 * cw0[k]));
                dw += std::norm(st.w[k] - heat * (0.5 * cu0[k] + 0.25 * R * h0[k]));
            }
            eu.add(du * rule.weights[i]);
            ew.add(dw * rule.weights[i]);
            su.add(norm_sq(st.u) * rule.weights[i]);
            sw.add(norm_sq(st.w) * rule.weights[i]);
        }
        return ErrNorms{std::sqrt(c * eu.value()), std::sqrt(c * ew.value()),
                        std::sqrt(c * su.value()), std::sqrt(c * sw.value())};
    };

    std::vector<double> ue, we;
    for (double t : times) {
        const ErrNorms f = errors_at(t, fine);
        const ErrNorms b = errors_at(t, base);
        // error norms are cancellation-limited: differences of state-scale
        // quantities carry ~1e-16 * scale of absolute noise per node
        detail::check_pair(f.u_err, b.u_err, "profile_error_curves(u)",
                           1e-13 * f.u_scale);
        detail::check_pair(f.w_err, b.w_err, "profile_error_curves(w)",
                           1e-13 * f.w_scale);
        ue.push_back(f.u_err);
        we.push_back(f.w_err);
    }
    const double lo = std::max(kFitWindowLo, times.front());
    const double hi = std::min(kFitWindowHi, times.back());
    ProfileErrorReports out;
    out.u_error = make_report(times, std::move(ue), lo, hi);
    out.w_error = make_report(times, std::move(we), lo, hi);
    return out;
}

/// Signed residual of the linear enstrophy identity over [t1, t2]:
///   F(t2) - F(t1) + 2 int_{t1}^{t2} [ 4 chi ||E_L||^2
///       + (gamma+chi) ||grad E_L - (mu/2chi) grad Omega_L||^2
///       + (mu gamma / 4 chi^2)(mu+chi) ||grad Omega_L||^2 ] dt
/// with F = ||E_L||^2 + a ||Omega_L||^2. Gradients are realized spectrally
/// as |xi| amplitudes and the time integral by Gauss-Legendre.
inline double enstrophy_identity_residual(const MaterialParams& p,
                                          const ContinuumProfile& prof, double t1,
                                          double t2, const QuadratureSpec& quad,
                                          int time_nodes = 24) {
    if (!(t1 >= 0.0) || t2 < t1)
        throw std::invalid_argument("enstrophy_identity_residual: need 0 <= t1 <= t2");
    if (time_nodes < 8)
        throw std::invalid_argument("enstrophy_identity_residual: need >= 8 time nodes");
    if (t1 == t2) return 0.0;
    const ConstantsLedger L = constants_ledger(p);
    const double c = 1.0 / std::pow(2.0 * kPi, 3);
    const double mu_2chi = p.mu / (2.0 * p.chi);

    auto eval = [&](const QuadratureRule& rule) {
        auto f_of = [&](double t) {
            const auto n = detail::linear_norms_sq(p, prof, t, rule);
            return n.e + L.a * n.omega;
        };
        auto dissipation = [&](double t) {
            KahanSum se, sg, so;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const Vec3d& xi = rule.nodes[i];
                const double R = norm_sq(xi);
                const LinearStateHat st = linear_state_hat(p, prof, xi, t);
                double mix = 0.0;
                for (int k = 0; k < 3; ++k) mix += std::norm(st.e[k] - mu_2chi * st.omega[k]);
                const double wgt = rule.weights[i];
                se.add(norm_sq(st.e) * wgt);
                sg.add(R * mix * wgt);
                so.add(R * norm_sq(st.omega) * wgt);
            }
            return 2.0 * c *
                   (4.0 * p.chi * se.value() + (p.gamma + p.chi) * sg.value() +
                    p.mu * p.gamma / (4.0 * p.chi * p.chi) * (p.mu + p.chi) * so.value());
        };
        auto [xt, wt] = gauss_legendre(time_nodes);
        const double half = 0.5 * (t2 - t1), mid = 0.5 * (t1 + t2);
        KahanSum integral;
        for (int i = 0; i < time_nodes; ++i)
            integral.add(wt[i] * half * dissipation(mid + half * xt[i]));
        return f_of(t2) - f_of(t1) + integral.value();
    };

    const double res_fine = eval(build_rule(quad.refined()));
    const double res_base = eval(build_rule(quad));
    const QuadratureRule fine = build_rule(quad.refined());
    const auto n1 = detail::linear_norms_sq(p, prof, t1, fine);
    const double scale = n1.e + L.a * n1.omega;
    if (scale > 0.0 && std::abs(res_fine - res_base) > 1e-6 * scale)
        throw QuadratureNotConverged("enstrophy_identity_residual: residual not converged");
    return res_fine;
}

/// Fourier-splitting diagnostic at time t >= t0: the splitting radius g(t)
/// and the low-frequency mass I_z = int_{|xi| <= g(t)} |z_L_hat|^2 dxi
/// (no Plancherel prefactor; divide by (2 pi)^3 ||z_L||^2 for the
/// concentration ratio).
struct SplittingDiagnostics {
    double g;
    double low_freq_mass;
};

inline SplittingDiagnostics fourier_splitting_diagnostics(const MaterialParams& p,
                                                          const ConstantsLedger& ledger,
                                                          const ContinuumProfile& prof,
                                                          double t,
                                                          const QuadratureSpec& quad) {
    if (t < ledger.t0)
        throw std::invalid_argument("fourier_splitting_diagnostics: requires t >= t0");
    SplittingDiagnostics out;
    out.g = splitting_radius(ledger, t);
    QuadratureSpec ball = quad;
    ball.r_max = std::min(quad.r_max, out.g);
    if (!(ball.r_max > ball.r_min)) {
        out.low_freq_mass = 0.0;
        return out;
    }
    const QuadratureRule rule = build_rule(ball.refined());
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const LinearStateHat st = linear_state_hat(p, prof, rule.nodes[i], t);
        s.add((norm_sq(st.u) + norm_sq(st.w)) * rule.weights[i]);
    }
    out.low_freq_mass = s.value();
    return out;
}

}  // namespace micropolar
