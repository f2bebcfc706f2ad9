#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "micropolar/decay.hpp"
#include "micropolar/fft.hpp"
#include "micropolar/field.hpp"
#include "micropolar/ops.hpp"
#include "micropolar/propagator.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Spectral Galerkin scheme for the filtered mollified micropolar system:
// states live in the sharp frequency ball |k| <= n_cut, the advecting
// velocity is J_eps P u, and the quadratic terms are
//   u-row: -E_n P ((J_eps P u) . grad u)
//   w-row: -E_n ((J_eps P u) . grad w).
// The linear part is integrated exactly per mode (integrating factor with
// the closed-form propagator); only the nonlinearity sees the time step
// (explicit trapezoid / Heun, formal order 2).
//
// With 3 n_cut < n (the default radius) the pseudospectral products are
// alias-free, which makes the Galerkin energy cancellation of the
// nonlinearity exact up to rounding.
// ---------------------------------------------------------------------------

struct SolverConfig {
    GridSpec grid;
    int n_cut = -1;  // E_n radius; < 0 selects the alias-free default ~ n/3
    double epsilon = 0.0;
    double dt = 1e-3;
    double t_end = 1.0;
    MaterialParams params;
    int record_every = 1;
    bool mask_nonlinearity = false;  // testing knob: drop the quadratic terms

    int effective_cutoff() const {
        if (n_cut >= 0) return n_cut;
        int m = grid.n / 3;
        while (3 * m >= grid.n) --m;
        return m;
    }

    void validate() const {
        grid.validate();
        params.validate();
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
        if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be > 0");
        if (epsilon < 0.0) throw std::invalid_argument("SolverConfig: epsilon must be >= 0");
        if (record_every < 1)
            throw std::invalid_argument("SolverConfig: record_every must be >= 1");
        if (n_cut > grid.n / 2)
            throw std::invalid_argument("SolverConfig: n_cut must be <= n/2");
    }
};

/// Recorded run: energies ||u||^2, ||w||^2 and the four dissipation
/// integrands of the energy equality at each recorded time, plus optional
/// state snapshots (possibly at a coarser cadence than the series).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> snapshot_times;
    std::vector<StateSpectral> states;  // aligned with snapshot_times
    std::vector<double> energy_u, energy_w;
    std::vector<double> diss_grad_u, diss_grad_w, diss_div_w, diss_curl_u_minus_2w;

    double energy(std::size_t i) const { return energy_u[i] + energy_w[i]; }
};

class Galerkin {
public:
    explicit Galerkin(SolverConfig cfg)
        : cfg_(std::move(cfg)), cutoff_(cfg_.effective_cutoff()), fft_(cfg_.grid.n) {
        cfg_.validate();
    }

    const SolverConfig& config() const { return cfg_; }
    int cutoff() const { return cutoff_; }

    /// Quadratic terms only, evaluated pseudospectrally; output is truncated,
    /// Hermitian, and divergence-free in the u-row.
    StateSpectral nonlinear_rhs(const StateSpectral& z) const {
        const GridSpec& g = cfg_.grid;
        StateSpectral rhs(g);
        if (cfg_.mask_nonlinearity) return rhs;

        // advecting velocity J_eps P u, sampled in physical space
        std::array<std::vector<cplx>, 3> v_phys;
        for (int c = 0; c < 3; ++c) {
            advect_spec_.assign(g.num_modes(), cplx(0, 0));
            for_modes(g, [&](std::size_t idx, const Vec3d& xi) {
                const double m = std::exp(-0.5 * cfg_.epsilon * cfg_.epsilon * norm_sq(xi));
                advect_spec_[idx] = m * transverse_part(xi, z.u.mode(idx))[c];
            });
            fft_.to_physical(advect_spec_, v_phys[c]);
        }

        convect(z.u, v_phys, rhs.u, /*project=*/true);
        convect(z.w, v_phys, rhs.w, /*project=*/false);
        return rhs;
    }

    /// One integrating-factor Heun step. With the nonlinearity masked this
    /// is exactly the linear propagator.
    StateSpectral step(const StateSpectral& z, double dt) const {
        const StateSpectral k1 = nonlinear_rhs(z);
        StateSpectral sz = linear_flow(z, dt);
        if (cfg_.mask_nonlinearity) return sz;
        const StateSpectral sk1 = linear_flow(k1, dt);
        StateSpectral pred(cfg_.grid);
        pred.u = axpy(dt, sk1.u, sz.u);
        pred.w = axpy(dt, sk1.w, sz.w);
        const StateSpectral k2 = nonlinear_rhs(pred);
        StateSpectral out(cfg_.grid);
        out.u = axpy(0.5 * dt, sk1.u, axpy(0.5 * dt, k2.u, sz.u));
        out.w = axpy(0.5 * dt, sk1.w, axpy(0.5 * dt, k2.w, sz.w));
        return out;
    }

    /// Time-step from z0 (truncated, u divergence-free) to t_end, recording
    /// every record_every steps and at the final step. Aborts on NaN.
    /// Snapshots, when kept, are stored every snapshot_stride-th recorded
    /// point (plus the initial and final states).
    Trajectory run(const StateSpectral& z0, bool keep_snapshots = false,
                   int snapshot_stride = 1) const {
        const long long n_steps = std::llround(cfg_.t_end / cfg_.dt);
        if (n_steps < 1) throw std::invalid_argument("Galerkin::run: t_end < dt");
        if (snapshot_stride < 1)
            throw std::invalid_argument("Galerkin::run: snapshot_stride must be >= 1");
        Trajectory traj;
        StateSpectral z = z0;
        long long recorded = 0;
        auto record_state = [&](double t, bool last) {
            record(traj, t, z);
            if (keep_snapshots && (recorded % snapshot_stride == 0 || last)) {
                traj.snapshot_times.push_back(t);
                traj.states.push_back(z);
            }
            ++recorded;
        };
        record_state(0.0, false);
        for (long long s = 1; s <= n_steps; ++s) {
            z = step(z, cfg_.dt);
            if (!z.u.all_finite() || !z.w.all_finite())
                throw std::runtime_error("Galerkin::run: non-finite state at step " +
                                         std::to_string(s));
            if (s % cfg_.record_every == 0 || s == n_steps)
                record_state(s * cfg_.dt, s == n_steps);
        }
        return traj;
    }

private:
    template <typename Fn>
    static void for_modes(const GridSpec& g, Fn&& fn) {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k) fn(g.index(i, j, k), g.xi(i, j, k));
    }

    // -E_n [P] (v . grad f), pseudospectral
    void convect(const SpectralField& f, const std::array<std::vector<cplx>, 3>& v_phys,
                 SpectralField& out, bool project) const {
        const GridSpec& g = cfg_.grid;
        const std::size_t m = g.num_modes();
        const long long r2max = static_cast<long long>(cutoff_) * cutoff_;
        for (int i = 0; i < 3; ++i) {
            acc_.assign(m, cplx(0, 0));
            for (int j = 0; j < 3; ++j) {
                spec_tmp_.assign(m, cplx(0, 0));
                for_modes(g, [&](std::size_t idx, const Vec3d& xi) {
                    spec_tmp_[idx] = cplx(0, 1) * xi[j] * f.comp[i][idx];
                });
                fft_.to_physical(spec_tmp_, phys_tmp_);
                for (std::size_t x = 0; x < m; ++x)
                    acc_[x] += v_phys[j][x].real() * phys_tmp_[x].real();
            }
            fft_.to_spectral(acc_, out.comp[i]);
        }
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k) {
                    const std::size_t idx = g.index(i, j, k);
                    if (g.lattice_r2(i, j, k) > r2max) {
                        for (int c = 0; c < 3; ++c) out.comp[c][idx] = cplx(0, 0);
                        continue;
                    }
                    Vec3c val = out.mode(idx);
                    if (project) val = transverse_part(g.xi(i, j, k), val);
                    out.set_mode(idx, {-val[0], -val[1], -val[2]});
                }
    }

    StateSpectral linear_flow(const StateSpectral& z, double dt) const {
        return apply_linear(cfg_.params, z, dt);
    }

    static void record(Trajectory& traj, double t, const StateSpectral& z) {
        traj.times.push_back(t);
        traj.energy_u.push_back(l2_norm_sq(z.u));
        traj.energy_w.push_back(l2_norm_sq(z.w));
        traj.diss_grad_u.push_back(grad_norm_sq(z.u));
        traj.diss_grad_w.push_back(grad_norm_sq(z.w));
        traj.diss_div_w.push_back(l2_norm_sq_scalar(z.grid(), div_hat(z.w)));
        traj.diss_curl_u_minus_2w.push_back(l2_norm_sq(axpy(-2.0, z.w, curl_hat(z.u))));
    }

    SolverConfig cfg_;
    int cutoff_;
    mutable Fft3 fft_;
    mutable std::vector<cplx> advect_spec_, spec_tmp_, acc_;
    mutable std::vector<cplx> phys_tmp_;
};

namespace detail {

// Composite Simpson on a uniformly spaced series; falls back to the 3/8
// rule for a trailing odd interval.
inline double simpson(const std::vector<double>& t, const std::vector<double>& y,
                      std::size_t lo, std::size_t hi) {
    const std::size_t m = hi - lo;
    if (m == 0) return 0.0;
    const double h = t[lo + 1] - t[lo];
    for (std::size_t i = lo; i < hi; ++i)
        if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * (1.0 + std::abs(t[i])))
            throw std::invalid_argument("simpson: recorded times are not uniform");
    if (m == 1) return 0.5 * h * (y[lo] + y[lo + 1]);
    std::size_t even_end = hi;
    double tail = 0.0;
    if (m % 2 != 0) {
        if (m < 3) return 0.5 * h * (y[lo] + y[lo + 1]);
        even_end = hi - 3;
        tail = 3.0 * h / 8.0 *
               (y[even_end] + 3.0 * y[even_end + 1] + 3.0 * y[even_end + 2] + y[hi]);
    }
    KahanSum s;
    for (std::size_t i = lo; i + 2 <= even_end; i += 2)
        s.add(h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]));
    return s.value() + tail;
}

inline std::size_t locate_time(const std::vector<double>& times, double t) {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9 * (1.0 + std::abs(t))) return i;
    throw std::invalid_argument("energy_balance_residual: time not in recorded series");
}

}  // namespace detail

/// Signed residual of the energy equality over recorded times [s, t]:
///   E(t) - E(s) + 2 mu int ||grad u||^2 + 2 gamma int ||grad w||^2
///     + 2 kappa int ||div w||^2 + 2 chi int ||curl u - 2w||^2,
/// time integrals by composite Simpson on the recorded series. Integrals
/// preceded by a zero coefficient drop out automatically.
inline double energy_balance_residual(const Trajectory& traj, const MaterialParams& p,
                                      double s, double t) {
    if (!(s <= t)) throw std::invalid_argument("energy_balance_residual: need s <= t");
    const std::size_t is = detail::locate_time(traj.times, s);
    const std::size_t it = detail::locate_time(traj.times, t);
    if (is == it) return 0.0;
    double r = traj.energy(it) - traj.energy(is);
    r += 2.0 * p.mu * detail::simpson(traj.times, traj.diss_grad_u, is, it);
    if (p.gamma > 0.0)
        r += 2.0 * p.gamma * detail::simpson(traj.times, traj.diss_grad_w, is, it);
    if (p.kappa > 0.0)
        r += 2.0 * p.kappa * detail::simpson(traj.times, traj.diss_div_w, is, it);
    r += 2.0 * p.chi * detail::simpson(traj.times, traj.diss_curl_u_minus_2w, is, it);
    return r;
}

/// || z_eps - z_L ||(t) at the snapshot times, with z_L the exact linear
/// flow of the same initial state.
inline DecayReport difference_from_linear(const Trajectory& traj,
                                          const MaterialParams& p) {
    if (traj.states.size() != traj.snapshot_times.size() || traj.states.empty() ||
        traj.snapshot_times.front() != 0.0)
        throw std::invalid_argument("difference_from_linear: trajectory has no snapshots");
    DecayReport rep;
    rep.times = traj.snapshot_times;
    const StateSpectral& z0 = traj.states.front();
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        const StateSpectral lin = apply_linear(p, z0, rep.times[i]);
        rep.values.push_back(state_distance(traj.states[i], lin));
    }
    std::size_t positive = 0;
    for (double v : rep.values)
        if (v > 0.0) ++positive;
    if (positive >= 3 && rep.times.size() >= 2)
        fit_power_law(rep, rep.times[1], rep.times.back());
    return rep;
}

}  // namespace micropolar
