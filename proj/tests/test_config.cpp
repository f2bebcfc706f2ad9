#include <catch2/catch_amalgamated.hpp>

#include "micropolar/config.hpp"

using namespace micropolar;

namespace {

const char* kMinimal = R"(
# minimal symbol-check run
experiment = symbol-check
seed = 7
)";

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
    ParsedConfig parsed = parse_config(kMinimal);
    REQUIRE(parsed.ok());
    const ExperimentConfig& c = parsed.config;
    CHECK(c.experiment == "symbol-check");
    CHECK(c.seed == 7);
    CHECK(c.params.mu == 1.0);
    CHECK(c.params.chi == 1.0);
    CHECK(c.solver.grid.n == 32);
    CHECK(c.times.count == 25);
    CHECK(c.out_dir == "out");
    // automatic quadrature window resolves against sigma and t_max
    const QuadratureSpec q = c.effective_quadrature();
    CHECK(q.r_min == Catch::Approx(1e-4 / std::sqrt(1.0 + c.times.t_max)));
    CHECK(q.r_max == Catch::Approx(12.0 * c.data.sigma));
}

TEST_CASE("constraint violations carry line numbers") {
    const char* text =
        "experiment = linear-decay\n"
        "params.chi = -1\n"
        "data.q = -2\n";
    ParsedConfig parsed = parse_config(text);
    REQUIRE(parsed.errors.size() == 2);
    CHECK(parsed.errors[0].line == 2);
    CHECK(parsed.errors[0].message == "chi must be > 0");
    CHECK(parsed.errors[1].line == 3);
    CHECK(parsed.errors[1].message == "q must be >= -1");
}

TEST_CASE("all errors are collected, not just the first") {
    const char* text =
        "experiment = no-such-thing\n"
        "params.mu = abc\n"
        "bogus.key = 1\n"
        "params.mu = 2\n"
        "solver.dt = 0\n"
        "times.t_min = 500\n"
        "times.t_max = 5\n";
    ParsedConfig parsed = parse_config(text);
    CHECK(parsed.errors.size() >= 5);
    bool unknown_key = false, type_error = false, duplicate = false, cross = false;
    for (const auto& e : parsed.errors) {
        if (e.message.find("unknown key 'bogus.key'") != std::string::npos)
            unknown_key = true;
        if (e.message.find("expected a number") != std::string::npos) type_error = true;
        if (e.message.find("duplicate key") != std::string::npos) duplicate = true;
        if (e.message.find("t_min must be < times.t_max") != std::string::npos)
            cross = true;
    }
    CHECK(unknown_key);
    CHECK(type_error);
    CHECK(duplicate);
    CHECK(cross);
}

TEST_CASE("missing experiment is an error") {
    ParsedConfig parsed = parse_config("params.mu = 1.5\n");
    REQUIRE_FALSE(parsed.ok());
    CHECK(parsed.errors[0].message.find("experiment") != std::string::npos);
}

TEST_CASE("malformed lines are reported") {
    ParsedConfig parsed = parse_config("experiment = gen-data\njust some words\n");
    REQUIRE(parsed.errors.size() == 1);
    CHECK(parsed.errors[0].line == 2);
    CHECK(parsed.errors[0].message.find("key = value") != std::string::npos);
}

TEST_CASE("emitted effective config round-trips to an identical struct") {
    const char* text =
        "experiment = nonlinear-run\n"
        "seed = 123456789012345\n"
        "out_dir = /tmp/mp_run\n"
        "params.mu = 0.37\n"
        "params.chi = 2.25\n"
        "params.gamma = 0.125\n"
        "params.kappa = 1.75\n"
        "data.kind = torus-random\n"
        "data.q = 0.5\n"
        "data.sigma = 3.5\n"
        "data.amplitude = 0.25\n"
        "data.seed = 99\n"
        "data.coupling = u0-equals-minus-half-curl-w0\n"
        "quad.r_min = 1e-5\n"
        "quad.r_max = 20\n"
        "quad.n_radial = 64\n"
        "quad.n_angular = 6\n"
        "solver.n = 16\n"
        "solver.box_length = 3.25\n"
        "solver.n_cut = 5\n"
        "solver.epsilon = 0.5\n"
        "solver.dt = 0.002\n"
        "solver.t_end = 0.5\n"
        "solver.record_every = 10\n"
        "solver.mask_nonlinearity = true\n"
        "times.t_min = 2\n"
        "times.t_max = 2000\n"
        "times.count = 17\n";
    ParsedConfig first = parse_config(text);
    REQUIRE(first.ok());
    const std::string emitted = emit_config(first.config);
    ParsedConfig second = parse_config(emitted);
    REQUIRE(second.ok());
    CHECK(emit_config(second.config) == emitted);
    CHECK(second.config.params.mu == first.config.params.mu);
    CHECK(second.config.seed == first.config.seed);
    CHECK(second.config.data.coupling == first.config.data.coupling);
    CHECK(second.config.solver.mask_nonlinearity == true);
    CHECK(second.config.quad.r_min == first.config.quad.r_min);
}
