#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "micropolar/continuum.hpp"
#include "micropolar/datagen.hpp"
#include "micropolar/io.hpp"
#include "micropolar/solver.hpp"

namespace micropolar {

// ---------------------------------------------------------------------------
// Flat key-value experiment configuration: `section.key = value` lines with
// `#` comments. Parsing collects every error (with its line number) instead
// of stopping at the first one; unknown and duplicate keys are rejected.
// ---------------------------------------------------------------------------

struct ParseError {
    int line;
    std::string message;
};

struct TimeGridSpec {
    double t_min = 1e2;
    double t_max = 1e4;
    int count = 25;

    std::vector<double> grid() const { return log_spaced(t_min, t_max, count); }
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "symbol-check", "linear-decay", "profile-error", "enstrophy",
        "splitting",    "nonlinear-run", "gen-data"};
    return names;
}

struct ExperimentConfig {
    std::string experiment;
    MaterialParams params;
    DataSpec data;
    QuadratureSpec quad{0.0, 0.0, 192, 10};  // r_min = 0 selects the automatic window
    SolverConfig solver;
    TimeGridSpec times;
    std::string out_dir = "out";
    std::uint64_t seed = 0;

    /// Quadrature window resolved against the data scale and time horizon.
    QuadratureSpec effective_quadrature() const {
        if (quad.r_min > 0.0) return quad;
        QuadratureSpec q = default_quadrature(data.sigma, times.t_max);
        q.n_radial = quad.n_radial;
        q.n_angular = quad.n_angular;
        return q;
    }
};

struct ParsedConfig {
    ExperimentConfig config;
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

namespace config_detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline bool parse_double(const std::string& v, double& out) {
    std::istringstream ss(v);
    ss >> out;
    return static_cast<bool>(ss) && ss.eof();
}

inline bool parse_int(const std::string& v, long long& out) {
    std::istringstream ss(v);
    ss >> out;
    return static_cast<bool>(ss) && ss.eof();
}

inline bool parse_u64(const std::string& v, std::uint64_t& out) {
    if (v.empty() || v[0] == '-') return false;
    std::istringstream ss(v);
    ss >> out;
    return static_cast<bool>(ss) && ss.eof();
}

inline bool parse_bool(const std::string& v, bool& out) {
    if (v == "true") { out = true; return true; }
    if (v == "false") { out = false; return true; }
    return false;
}

}  // namespace config_detail

/// Parse and validate a configuration. Every violated constraint is
/// reported with the line it came from; whole-config consistency errors
/// carry line 0.
inline ParsedConfig parse_config(std::string_view text) {
    using namespace config_detail;
    ParsedConfig out;
    ExperimentConfig& c = out.config;

    // handlers return an error message, or empty on success
    using Handler = std::function<std::string(const std::string&)>;
    auto num = [](double& slot, auto constraint) {
        return [&slot, constraint](const std::string& v) -> std::string {
            double d;
            if (!parse_double(v, d)) return "expected a number, got '" + v + "'";
            slot = d;
            return constraint(d);
        };
    };
    auto positive = [](const char* what) {
        return [what](double d) {
            return d > 0.0 ? std::string() : std::string(what) + " must be > 0";
        };
    };
    auto non_negative = [](const char* what) {
        return [what](double d) {
            return d >= 0.0 ? std::string() : std::string(what) + " must be >= 0";
        };
    };
    auto int_slot = [](int& slot, long long lo, long long hi, const char* what) {
        return [&slot, lo, hi, what](const std::string& v) -> std::string {
            long long i;
            if (!parse_int(v, i)) return "expected an integer, got '" + v + "'";
            if (i < lo || i > hi)
                return std::string(what) + " out of range [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]";
            slot = static_cast<int>(i);
            return "";
        };
    };

    std::map<std::string, Handler> handlers;
    handlers["experiment"] = [&](const std::string& v) -> std::string {
        for (const auto& name : experiment_names())
            if (v == name) {
                c.experiment = v;
                return "";
            }
        return "unknown experiment '" + v + "'";
    };
    handlers["seed"] = [&](const std::string& v) -> std::string {
        return parse_u64(v, c.seed) ? "" : "expected a non-negative integer, got '" + v + "'";
    };
    handlers["out_dir"] = [&](const std::string& v) -> std::string {
        if (v.empty()) return "out_dir must not be empty";
        c.out_dir = v;
        return "";
    };
    handlers["params.mu"] = num(c.params.mu, positive("mu"));
    handlers["params.chi"] = num(c.params.chi, positive("chi"));
    handlers["params.gamma"] = num(c.params.gamma, non_negative("gamma"));
    handlers["params.kappa"] = num(c.params.kappa, non_negative("kappa"));
    handlers["data.kind"] = [&](const std::string& v) -> std::string {
        if (v == "torus-random") c.data.kind = DataSpec::Kind::torus_random;
        else if (v == "continuum-profile") c.data.kind = DataSpec::Kind::continuum_profile;
        else return "data.kind must be 'torus-random' or 'continuum-profile'";
        return "";
    };
    handlers["data.q"] = num(c.data.q, [](double d) {
        return d >= -1.0 ? std::string() : std::string("q must be >= -1");
    });
    handlers["data.sigma"] = num(c.data.sigma, positive("sigma"));
    handlers["data.amplitude"] = num(c.data.amplitude, non_negative("amplitude"));
    handlers["data.seed"] = [&](const std::string& v) -> std::string {
        return parse_u64(v, c.data.seed) ? ""
                                         : "expected a non-negative integer, got '" + v + "'";
    };
    handlers["data.coupling"] = [&](const std::string& v) -> std::string {
        if (v == "independent") c.data.coupling = DataSpec::Coupling::independent;
        else if (v == "u0-equals-minus-half-curl-w0")
            c.data.coupling = DataSpec::Coupling::u0_equals_minus_half_curl_w0;
        else
            return "data.coupling must be 'independent' or "
                   "'u0-equals-minus-half-curl-w0'";
        return "";
    };
    handlers["quad.r_min"] = num(c.quad.r_min, non_negative("r_min"));
    handlers["quad.r_max"] = num(c.quad.r_max, non_negative("r_max"));
    handlers["quad.n_radial"] = int_slot(c.quad.n_radial, 2, 100000, "n_radial");
    handlers["quad.n_angular"] = int_slot(c.quad.n_angular, 2, 1000, "n_angular");
    handlers["solver.n"] = int_slot(c.solver.grid.n, 4, 1024, "solver.n");
    handlers["solver.box_length"] = num(c.solver.grid.box_length, positive("box_length"));
    handlers["solver.n_cut"] = int_slot(c.solver.n_cut, -1, 512, "n_cut");
    handlers["solver.epsilon"] = num(c.solver.epsilon, non_negative("epsilon"));
    handlers["solver.dt"] = num(c.solver.dt, positive("dt"));
    handlers["solver.t_end"] = num(c.solver.t_end, positive("t_end"));
    handlers["solver.record_every"] =
        int_slot(c.solver.record_every, 1, 1000000, "record_every");
    handlers["solver.mask_nonlinearity"] = [&](const std::string& v) -> std::string {
        return parse_bool(v, c.solver.mask_nonlinearity)
                   ? ""
                   : "expected 'true' or 'false', got '" + v + "'";
    };
    handlers["times.t_min"] = num(c.times.t_min, positive("t_min"));
    handlers["times.t_max"] = num(c.times.t_max, positive("t_max"));
    handlers["times.count"] = int_slot(c.times.count, 2, 100000, "times.count");

    c.solver.grid = {32, 2.0 * kPi};

    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string line(raw);
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            out.errors.push_back({line_no, "expected 'key = value', got '" + line + "'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end()) {
            out.errors.push_back({line_no, "unknown key '" + key + "'"});
            continue;
        }
        if (!seen.insert(key).second) {
            out.errors.push_back({line_no, "duplicate key '" + key + "'"});
            continue;
        }
        if (std::string err = it->second(value); !err.empty())
            out.errors.push_back({line_no, err});
    }

    // whole-config consistency
    if (c.experiment.empty())
        out.errors.push_back({0, "missing required key 'experiment'"});
    if (!(c.times.t_min < c.times.t_max))
        out.errors.push_back({0, "times.t_min must be < times.t_max"});
    if (c.quad.r_min > 0.0 && !(c.quad.r_max > c.quad.r_min))
        out.errors.push_back({0, "quad.r_max must be > quad.r_min"});
    if (c.solver.n_cut > c.solver.grid.n / 2)
        out.errors.push_back({0, "solver.n_cut must be <= solver.n / 2"});
    return out;
}

/// Serialize the full effective configuration; parse_config(emit_config(c))
/// reproduces c exactly.
inline std::string emit_config(const ExperimentConfig& c) {
    std::ostringstream ss;
    auto d = [](double v) { return format_double(v); };
    ss << "experiment = " << c.experiment << "\n";
    ss << "seed = " << c.seed << "\n";
    ss << "out_dir = " << c.out_dir << "\n";
    ss << "params.mu = " << d(c.params.mu) << "\n";
    ss << "params.chi = " << d(c.params.chi) << "\n";
    ss << "params.gamma = " << d(c.params.gamma) << "\n";
    ss << "params.kappa = " << d(c.params.kappa) << "\n";
    ss << "data.kind = " << to_string(c.data.kind) << "\n";
    ss << "data.q = " << d(c.data.q) << "\n";
    ss << "data.sigma = " << d(c.data.sigma) << "\n";
    ss << "data.amplitude = " << d(c.data.amplitude) << "\n";
    ss << "data.seed = " << c.data.seed << "\n";
    ss << "data.coupling = " << to_string(c.data.coupling) << "\n";
    ss << "quad.r_min = " << d(c.quad.r_min) << "\n";
    ss << "quad.r_max = " << d(c.quad.r_max) << "\n";
    ss << "quad.n_radial = " << c.quad.n_radial << "\n";
    ss << "quad.n_angular = " << c.quad.n_angular << "\n";
    ss << "solver.n = " << c.solver.grid.n << "\n";
    ss << "solver.box_length = " << d(c.solver.grid.box_length) << "\n";
    ss << "solver.n_cut = " << c.solver.n_cut << "\n";
    ss << "solver.epsilon = " << d(c.solver.epsilon) << "\n";
    ss << "solver.dt = " << d(c.solver.dt) << "\n";
    ss << "solver.t_end = " << d(c.solver.t_end) << "\n";
    ss << "solver.record_every = " << c.solver.record_every << "\n";
    ss << "solver.mask_nonlinearity = " << (c.solver.mask_nonlinearity ? "true" : "false")
       << "\n";
    ss << "times.t_min = " << d(c.times.t_min) << "\n";
    ss << "times.t_max = " << d(c.times.t_max) << "\n";
    ss << "times.count = " << c.times.count << "\n";
    return ss.str();
}

}  // namespace micropolar
