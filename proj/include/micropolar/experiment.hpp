#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "micropolar/config.hpp"
#include "micropolar/datagen.hpp"
#include "micropolar/decay.hpp"
#include "micropolar/io.hpp"
#include "micropolar/oracle.hpp"
#include "micropolar/solver.hpp"
#include "micropolar/version.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Batch experiment runner. Every run writes meta.json (effective config,
// seeds, version, wall time, pass/fail record) into out_dir, one CSV per
// curve, and exits 0 iff all built-in assertions pass. Identical config and
// seed produce byte-identical CSVs.
// ---------------------------------------------------------------------------

struct RunReport {
    bool pass = true;
    std::vector<std::string> failures;
    std::vector<std::string> outputs;
    nlohmann::json extra;  // experiment-specific summary, merged into meta.json

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
    void merge(const RunReport& other) {
        pass = pass && other.pass;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        outputs.insert(outputs.end(), other.outputs.begin(), other.outputs.end());
        for (auto it = other.extra.begin(); it != other.extra.end(); ++it)
            extra[it.key()] = it.value();
    }
};

namespace exp_detail {

inline void write_curve_csv(const std::string& path, const std::vector<double>& t,
                            const std::vector<double>& v, RunReport& rep) {
    CsvWriter csv(path, {"t", "value"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(v[i])) throw std::runtime_error("non-finite value in " + path);
        csv.row({t[i], v[i]});
    }
    rep.outputs.push_back(path);
}

inline nlohmann::json report_json(const DecayReport& rep) {
    return {{"slope", rep.fitted_slope},
            {"stderr", rep.slope_stderr},
            {"window", {rep.window_lo, rep.window_hi}}};
}

inline nlohmann::json quad_json(const QuadratureSpec& q) {
    return {{"r_min", q.r_min},
            {"r_max", q.r_max},
            {"n_radial", q.n_radial},
            {"n_angular", q.n_angular}};
}

inline nlohmann::json params_json(const MaterialParams& p) {
    return {{"mu", p.mu}, {"chi", p.chi}, {"gamma", p.gamma}, {"kappa", p.kappa}};
}

// Run independent sub-tasks, optionally fanned out across forked worker
// processes (no shared mutable state: children write disjoint files and
// hand their reports back through per-task JSON files).
inline std::vector<RunReport> run_subtasks(const std::vector<std::function<RunReport()>>& tasks,
                                           int jobs, const std::string& scratch_dir) {
    std::vector<RunReport> results(tasks.size());
    if (jobs <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    ensure_dir(scratch_dir);
    auto result_path = [&](std::size_t i) {
        return scratch_dir + "/subtask_" + std::to_string(i) + ".json";
    };
    std::map<pid_t, std::size_t> running;
    std::size_t next = 0;
    auto reap_one = [&]() {
        int status = 0;
        const pid_t pid = waitpid(-1, &status, 0);
        const auto it = running.find(pid);
        if (it == running.end()) return;
        const std::size_t idx = it->second;
        running.erase(it);
        std::ifstream in(result_path(idx));
        if (!in) {
            results[idx].require(false, "subtask " + std::to_string(idx) +
                                            " produced no result file");
            return;
        }
        nlohmann::json j = nlohmann::json::parse(in);
        results[idx].pass = j["pass"];
        for (const auto& f : j["failures"]) results[idx].failures.push_back(f);
        for (const auto& o : j["outputs"]) results[idx].outputs.push_back(o);
        results[idx].extra = j["extra"];
    };
    while (next < tasks.size() || !running.empty()) {
        if (next < tasks.size() && running.size() < static_cast<std::size_t>(jobs)) {
            const std::size_t idx = next++;
            const pid_t pid = fork();
            if (pid == 0) {
                RunReport rep;
                try {
                    rep = tasks[idx]();
                } catch (const std::exception& e) {
                    rep.require(false, e.what());
                }
                nlohmann::json j{{"pass", rep.pass},
                                 {"failures", rep.failures},
                                 {"outputs", rep.outputs},
                                 {"extra", rep.extra}};
                std::ofstream out(result_path(idx));
                out << j.dump(2);
                out.close();
                _exit(rep.pass ? 0 : 1);
            }
            if (pid < 0) throw std::runtime_error("run_subtasks: fork failed");
            running[pid] = idx;
        } else {
            reap_one();
        }
    }
    return results;
}

}  // namespace exp_detail

// --------------------------- individual experiments ------------------------

/// Criterion-style randomized check of the closed-form propagator against
/// the matrix-exponential reference, plus the exact identity cases.
inline RunReport run_symbol_check(const ExperimentConfig& cfg) {
    RunReport rep;
    RandomStream rng(cfg.seed);
    const int draws = 1000;
    double worst_rel = 0.0;

    CsvWriter csv(cfg.out_dir + "/oracle_gaps.csv",
                  {"mu", "chi", "gamma", "kappa", "xi_norm", "t", "gap", "tol"});
    for (int i = 0; i < draws; ++i) {
        MaterialParams p{rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
                         rng.uniform() < 0.5 ? 0.0 : rng.log_uniform(0.1, 10.0),
                         rng.uniform() < 0.5 ? 0.0 : rng.log_uniform(0.1, 10.0)};
        const double r = rng.log_uniform(1e-4, 1e3);
        const double mu = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double s = std::sqrt(1.0 - mu * mu);
        const Vec3d xi{r * s * std::cos(phi), r * s * std::sin(phi), r * mu};
        const double t = rng.log_uniform(1e-3, 1e3);

        const PropagatorMatrix K = propagator_matrix(p, xi, t);
        const PropagatorMatrix O = propagator_oracle(p, xi, t);
        double gap = 0.0;
        for (int e = 0; e < 36; ++e) gap = std::max(gap, std::abs(K.m[e] - O.m[e]));
        const double tol = 1e-8 * (1.0 + O.max_abs());
        csv.row({p.mu, p.chi, p.gamma, p.kappa, r, t, gap, tol});
        worst_rel = std::max(worst_rel, gap / tol);
        if (gap > tol)
            rep.require(false, "oracle gap " + format_double(gap) + " above tolerance " +
                                   format_double(tol));
    }
    rep.outputs.push_back(cfg.out_dir + "/oracle_gaps.csv");
    rep.extra["oracle_gap_over_tol_max"] = worst_rel;

    // identity cases and longitudinal exactness for the configured params
    const MaterialParams p = cfg.params;
    for (int i = 0; i < 50; ++i) {
        const double r = rng.log_uniform(1e-4, 1e3);
        const Vec3d xi{r, 0.0, 0.0};
        PropagatorMatrix K0 = propagator_matrix(p, xi, 0.0);
        double gap0 = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                gap0 = std::max(gap0, std::abs(K0.at(a, b) - (a == b ? 1.0 : 0.0)));
        rep.require(gap0 <= 1e-14, "K(xi,0) differs from identity");

        const double t = rng.log_uniform(1e-3, 1e3);
        PropagatorMatrix Kz = propagator_matrix(p, {0.0, 0.0, 0.0}, t);
        const double damp = std::exp(-4.0 * p.chi * t);
        double gapz = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                const double want = a != b ? 0.0 : (a < 3 ? 1.0 : damp);
                gapz = std::max(gapz, std::abs(Kz.at(a, b) - want));
            }
        rep.require(gapz <= 1e-12, "K(0,t) differs from blockdiag(I, e^{-4 chi t} I)");
    }

    // symbol table for plotting
    CsvWriter table(cfg.out_dir + "/symbol_components.csv",
                    {"xi_sq", "t", "E11", "E21", "E22", "divFactor"});
    for (double xi_sq : log_spaced(1e-4, 1e3, 15))
        for (double t : log_spaced(1e-3, 1e3, 15)) {
            const SymbolComponents s = e_components(p, xi_sq, t);
            table.row({xi_sq, t, s.e11, s.e21, s.e22, s.div_factor});
        }
    rep.outputs.push_back(cfg.out_dir + "/symbol_components.csv");
    return rep;
}

/// Decay curves of the linear flow on the configured continuum profile;
/// asserts the Gamma = q + 3/2 rate for ||u_L||^2 and the Gamma + 1 upgrade
/// for ||w_L||^2, monotonicity of F, and the o(1/t) tail of t F(t).
inline RunReport run_linear_decay(const ExperimentConfig& cfg) {
    RunReport rep;
    const auto prof = make_continuum_profile(cfg.data);
    const auto times = cfg.times.grid();
    const auto quad = cfg.effective_quadrature();
    auto curves = decay_curves(cfg.params, prof, times, quad);

    const std::map<std::string, std::string> files = {
        {"u_L_sq", "decay_uL.csv"},      {"w_L_sq", "decay_wL.csv"},
        {"h_L_sq", "decay_hL.csv"},      {"grad_u_L_sq", "decay_grad_uL.csv"},
        {"E_L_sq", "decay_EL.csv"},      {"F", "decay_F.csv"}};
    nlohmann::json slopes;
    for (const auto& [name, rep_curve] : curves) {
        exp_detail::write_curve_csv(cfg.out_dir + "/" + files.at(name), rep_curve.times,
                                    rep_curve.values, rep);
        slopes[name] = exp_detail::report_json(rep_curve);
    }

    const double gamma_target = cfg.data.q + 1.5;
    const double slope_u = curves.at("u_L_sq").fitted_slope;
    const double slope_w = curves.at("w_L_sq").fitted_slope;
    rep.require(std::abs(slope_u + gamma_target) <= 0.10,
                "||u_L||^2 slope " + format_double(slope_u) + " not within 0.10 of " +
                    format_double(-gamma_target));
    rep.require(std::abs(slope_w + gamma_target + 1.0) <= 0.15,
                "||w_L||^2 slope " + format_double(slope_w) + " not within 0.15 of " +
                    format_double(-gamma_target - 1.0));
    rep.require(slope_w <= slope_u - 0.8,
                "||w_L||^2 does not decay at least 0.8 faster than ||u_L||^2");

    const auto& F = curves.at("F");
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < F.values.size(); ++i)
        if (F.values[i + 1] > F.values[i] * (1.0 + 1e-12)) monotone = false;
    rep.require(monotone, "F = ||E_L||^2 + a ||Omega_L||^2 is not non-increasing");

    // decreasing tail of t F(t) over the last decade of the window
    bool tail_decreasing = true;
    for (std::size_t i = 0; i + 1 < F.times.size(); ++i)
        if (F.times[i] >= 0.1 * F.times.back() &&
            F.times[i + 1] * F.values[i + 1] > F.times[i] * F.values[i] * (1.0 + 1e-12))
            tail_decreasing = false;
    rep.require(tail_decreasing, "t F(t) is not decreasing over the last decade");

    slopes["gamma_target"] = gamma_target;
    nlohmann::json j;
    j["curves"] = slopes;
    j["quad_spec"] = exp_detail::quad_json(quad);
    j["params"] = exp_detail::params_json(cfg.params);
    std::ofstream out(cfg.out_dir + "/slopes.json");
    out << j.dump(2) << "\n";
    rep.outputs.push_back(cfg.out_dir + "/slopes.json");
    rep.extra["slopes"] = slopes;
    return rep;
}

/// Profile-error curves for the two data branches (w0 = 0 and u0 = 0).
inline RunReport run_profile_error(const ExperimentConfig& cfg, int jobs = 1) {
    const auto prof = make_continuum_profile(cfg.data);
    const auto times = cfg.times.grid();
    const auto quad = cfg.effective_quadrature();

    auto branch = [&](const ContinuumProfile& branch_prof, const std::string& tag,
                      bool check_u, double u_bound, double w_bound) {
        return [=, &cfg]() {
            RunReport rep;
            auto errs = profile_error_curves(cfg.params, branch_prof, times, quad);
            exp_detail::write_curve_csv(cfg.out_dir + "/error_u_" + tag + ".csv",
                                        errs.u_error.times, errs.u_error.values, rep);
            exp_detail::write_curve_csv(cfg.out_dir + "/error_w_" + tag + ".csv",
                                        errs.w_error.times, errs.w_error.values, rep);
            nlohmann::json j{{"u_error", exp_detail::report_json(errs.u_error)},
                             {"w_error", exp_detail::report_json(errs.w_error)}};
            if (check_u)
                rep.require(errs.u_error.fitted_slope <= u_bound,
                            tag + ": u-error slope " +
                                format_double(errs.u_error.fitted_slope) +
                                " not <= " + format_double(u_bound));
            rep.require(errs.w_error.fitted_slope <= w_bound,
                        tag + ": w-error slope " +
                            format_double(errs.w_error.fitted_slope) +
                            " not <= " + format_double(w_bound));
            if (check_u) {
                // t * error_u non-increasing over the last decade
                bool ok = true;
                const auto& e = errs.u_error;
                for (std::size_t i = 0; i + 1 < e.times.size(); ++i)
                    if (e.times[i] >= 0.1 * e.times.back() &&
                        e.times[i + 1] * e.values[i + 1] >
                            e.times[i] * e.values[i] * (1.0 + 1e-12))
                        ok = false;
                rep.require(ok, tag + ": t * u-error not non-increasing over last decade");
            }
            rep.extra[tag] = j;
            return rep;
        };
    };

    std::vector<std::function<RunReport()>> tasks = {
        branch(with_zero_w0(prof), "w0zero", true, -0.9, -1.35),
        branch(with_zero_u0(prof), "u0zero", false, 0.0, -1.85)};
    RunReport rep;
    for (auto& r : exp_detail::run_subtasks(tasks, jobs, cfg.out_dir + "/.subtasks"))
        rep.merge(r);

    nlohmann::json j = rep.extra;
    j["quad_spec"] = exp_detail::quad_json(quad);
    j["params"] = exp_detail::params_json(cfg.params);
    std::ofstream out(cfg.out_dir + "/slopes.json");
    out << j.dump(2) << "\n";
    rep.outputs.push_back(cfg.out_dir + "/slopes.json");
    return rep;
}

/// Enstrophy identity residuals over [1,2] and [10,20] plus monotonicity of
/// the functional F on the configured time grid.
inline RunReport run_enstrophy(const ExperimentConfig& cfg, int jobs = 1) {
    const auto prof = make_continuum_profile(cfg.data);
    const auto quad = cfg.effective_quadrature();
    const ConstantsLedger L = constants_ledger(cfg.params);

    const std::vector<std::pair<double, double>> intervals = {{1.0, 2.0}, {10.0, 20.0}};
    std::vector<std::function<RunReport()>> tasks;
    for (const auto& interval : intervals) {
        const double t1 = interval.first;
        const double t2 = interval.second;
        tasks.push_back([=, &cfg]() {
            RunReport rep;
            const double res = enstrophy_identity_residual(cfg.params, prof, t1, t2, quad);
            const QuadratureRule rule = build_rule(quad.refined());
            const auto n1 = detail::linear_norms_sq(cfg.params, prof, t1, rule);
            const double scale = n1.e + L.a * n1.omega;
            const double rel = std::abs(res) / scale;
            rep.require(rel <= 1e-6, "relative residual " + format_double(rel) +
                                         " over [" + format_double(t1) + ", " +
                                         format_double(t2) + "] exceeds 1e-6");
            rep.extra["residual_" + format_double(t1) + "_" + format_double(t2)] = {
                {"residual", res}, {"relative", rel}};
            return rep;
        });
    }
    RunReport rep;
    for (auto& r : exp_detail::run_subtasks(tasks, jobs, cfg.out_dir + "/.subtasks"))
        rep.merge(r);

    // sampled monotonicity of F and the curve itself
    const auto times = log_spaced(1.0, cfg.times.t_max, cfg.times.count);
    const QuadratureRule rule = build_rule(quad.refined());
    CsvWriter csv(cfg.out_dir + "/enstrophy.csv", {"t", "F", "E_L_sq", "omega_sq"});
    double prev = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto n = detail::linear_norms_sq(cfg.params, prof, times[i], rule);
        const double F = n.e + L.a * n.omega;
        csv.row({times[i], F, n.e, n.omega});
        if (i > 0 && F > prev * (1.0 + 1e-12)) monotone = false;
        prev = F;
    }
    rep.require(monotone, "F not non-increasing on the sampled grid");
    rep.outputs.push_back(cfg.out_dir + "/enstrophy.csv");
    rep.extra["ledger_a"] = L.a;
    return rep;
}

/// Fourier-splitting diagnostics: g(t), the low-frequency mass, and the
/// late-time concentration ratio.
inline RunReport run_splitting(const ExperimentConfig& cfg) {
    RunReport rep;
    const auto prof = make_continuum_profile(cfg.data);
    const auto quad = cfg.effective_quadrature();
    const ConstantsLedger L = constants_ledger(cfg.params);
    const double eight_pi3 = std::pow(2.0 * kPi, 3);

    nlohmann::json ledger{{"eta", L.eta},   {"c1", L.c1},      {"c2", L.c2},
                          {"c3", L.c3},     {"c4", L.c4},      {"delta", L.delta},
                          {"a", L.a},       {"t0", L.t0}};
    std::ofstream lout(cfg.out_dir + "/ledger.json");
    lout << ledger.dump(2) << "\n";
    rep.outputs.push_back(cfg.out_dir + "/ledger.json");

    const double t_lo = std::max(L.t0, cfg.times.t_min);
    const auto times = log_spaced(t_lo, std::max(cfg.times.t_max, 2.0 * t_lo),
                                  cfg.times.count);
    CsvWriter csv(cfg.out_dir + "/splitting.csv", {"t", "g", "I_z", "ratio"});
    std::vector<double> ratios;
    for (double t : times) {
        const auto diag = fourier_splitting_diagnostics(cfg.params, L, prof, t, quad);
        KahanSum total;
        const QuadratureRule rule = build_rule(quad.refined());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const auto st = linear_state_hat(cfg.params, prof, rule.nodes[i], t);
            total.add((norm_sq(st.u) + norm_sq(st.w)) * rule.weights[i]);
        }
        const double z_sq = total.value() / eight_pi3;  // = ||z_L||^2
        const double ratio = diag.low_freq_mass / (eight_pi3 * z_sq);
        csv.row({t, diag.g, diag.low_freq_mass, ratio});
        ratios.push_back(ratio);
        rep.require(splitting_radius(L, t) <= 1.0, "g(t) > 1 inside the valid range");
    }
    rep.outputs.push_back(cfg.out_dir + "/splitting.csv");
    rep.require(ratios.back() >= 0.99,
                "late-time low-frequency concentration ratio " +
                    format_double(ratios.back()) + " below 0.99");
    rep.require(ratios.back() >= ratios.front() - 1e-9,
                "concentration ratio decreased over the sweep");
    rep.extra["final_ratio"] = ratios.back();
    return rep;
}

/// Torus Galerkin run with energy-balance instrumentation.
inline RunReport run_nonlinear(const ExperimentConfig& cfg) {
    RunReport rep;
    if (cfg.data.kind != DataSpec::Kind::torus_random)
        throw std::invalid_argument("nonlinear-run requires data.kind = torus-random");
    Galerkin solver(cfg.solver);
    const StateSpectral z0 =
        make_torus_field(cfg.solver.grid, cfg.data, solver.cutoff());
    write_mpolar1(cfg.out_dir + "/state_initial.mpolar", z0, 0.0);
    rep.outputs.push_back(cfg.out_dir + "/state_initial.mpolar");

    // snapshots (for the gap curve) thinned to ~64 states; the energy
    // series itself is recorded at full cadence
    const long long recorded =
        std::llround(cfg.solver.t_end / cfg.solver.dt) / cfg.solver.record_every + 1;
    const int stride = static_cast<int>(std::max(1ll, recorded / 64));
    const Trajectory traj = solver.run(z0, true, stride);
    CsvWriter csv(cfg.out_dir + "/trajectory.csv",
                  {"t", "E_u", "E_w", "D_grad_u", "D_grad_w", "D_div_w", "D_curl2w"});
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv.row({traj.times[i], traj.energy_u[i], traj.energy_w[i], traj.diss_grad_u[i],
                 traj.diss_grad_w[i], traj.diss_div_w[i],
                 traj.diss_curl_u_minus_2w[i]});
    rep.outputs.push_back(cfg.out_dir + "/trajectory.csv");
    write_mpolar1(cfg.out_dir + "/state_final.mpolar", traj.states.back(),
                  traj.snapshot_times.back());
    rep.outputs.push_back(cfg.out_dir + "/state_final.mpolar");

    const double E0 = traj.energy(0);
    const double tol = 10.0 * cfg.solver.dt * cfg.solver.dt * E0;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i)
        if (traj.energy(i + 1) > traj.energy(i) + tol) monotone = false;
    rep.require(monotone, "energy increased beyond the dt^2 tolerance");

    double worst_div = 0.0, worst_herm = 0.0;
    for (const auto& st : traj.states) {
        worst_div = std::max(worst_div, max_divergence(st.u));
        worst_herm = std::max(worst_herm, std::max(st.u.hermitian_defect(),
                                                   st.w.hermitian_defect()));
    }
    rep.require(worst_div <= 1e-11, "u developed divergence " + format_double(worst_div));
    rep.require(worst_herm <= 1e-11, "state lost Hermitian symmetry");

    if (E0 > 0.0) {
        const double res =
            energy_balance_residual(traj, cfg.params, 0.0, traj.times.back());
        rep.extra["energy_balance_residual_relative"] = std::abs(res) / E0;
        rep.require(std::abs(res) <= 1e-4 * E0,
                    "energy-balance residual " + format_double(std::abs(res) / E0) +
                        " relative exceeds 1e-4");
    }

    const DecayReport gap = difference_from_linear(traj, cfg.params);
    exp_detail::write_curve_csv(cfg.out_dir + "/gap_from_linear.csv", gap.times,
                                gap.values, rep);
    rep.require(gap.values.front() == 0.0, "gap from linear flow nonzero at t = 0");
    return rep;
}

/// Deterministic data generation with a byte-for-byte reload check.
inline RunReport run_gen_data(const ExperimentConfig& cfg) {
    RunReport rep;
    if (cfg.data.kind != DataSpec::Kind::torus_random)
        throw std::invalid_argument("gen-data requires data.kind = torus-random");
    const int n_cut = cfg.solver.effective_cutoff();
    const StateSpectral z = make_torus_field(cfg.solver.grid, cfg.data, n_cut);
    const std::string path = cfg.out_dir + "/data.mpolar";
    write_mpolar1(path, z, 0.0);
    rep.outputs.push_back(path);

    const Snapshot snap = read_mpolar1(path);
    bool identical = snap.time == 0.0 && snap.state.grid() == z.grid();
    for (int c = 0; c < 3 && identical; ++c)
        for (std::size_t i = 0; i < z.u.comp[c].size(); ++i)
            if (snap.state.u.comp[c][i] != z.u.comp[c][i] ||
                snap.state.w.comp[c][i] != z.w.comp[c][i]) {
                identical = false;
                break;
            }
    rep.require(identical, "MPOLAR1 reload is not bit-identical");
    rep.extra["u_l2"] = l2_norm(z.u);
    rep.extra["w_l2"] = l2_norm(z.w);
    rep.extra["n_cut"] = n_cut;
    return rep;
}

// ------------------------------- dispatcher --------------------------------

inline int run_experiment(ExperimentConfig cfg, int jobs = 1) {
    const auto t_start = std::chrono::steady_clock::now();
    ensure_dir(cfg.out_dir);
    cfg.quad = cfg.effective_quadrature();  // freeze the effective window

    RunReport rep;
    try {
        if (cfg.experiment == "symbol-check") rep = run_symbol_check(cfg);
        else if (cfg.experiment == "linear-decay") rep = run_linear_decay(cfg);
        else if (cfg.experiment == "profile-error") rep = run_profile_error(cfg, jobs);
        else if (cfg.experiment == "enstrophy") rep = run_enstrophy(cfg, jobs);
        else if (cfg.experiment == "splitting") rep = run_splitting(cfg);
        else if (cfg.experiment == "nonlinear-run") rep = run_nonlinear(cfg);
        else if (cfg.experiment == "gen-data") rep = run_gen_data(cfg);
        else rep.require(false, "unknown experiment '" + cfg.experiment + "'");
    } catch (const std::exception& e) {
        rep.require(false, std::string("exception: ") + e.what());
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["experiment"] = cfg.experiment;
    meta["seed"] = cfg.seed;
    meta["data_seed"] = cfg.data.seed;
    meta["wall_time_seconds"] = wall;
    meta["pass"] = rep.pass;
    meta["failures"] = rep.failures;
    meta["outputs"] = rep.outputs;
    meta["summary"] = rep.extra;
    {
        // effective config echoed as config-file text and as a JSON map
        nlohmann::json cfg_map;
        std::istringstream ss(emit_config(cfg));
        std::string line;
        while (std::getline(ss, line)) {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos)
                cfg_map[line.substr(0, eq)] = line.substr(eq + 3);
        }
        meta["config"] = cfg_map;
    }
    std::ofstream out(cfg.out_dir + "/meta.json");
    out << meta.dump(2) << "\n";
    return rep.pass ? 0 : 1;
}

}  // namespace micropolar
