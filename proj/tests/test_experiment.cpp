#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "micropolar/experiment.hpp"

using namespace micropolar;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("gen-data experiment writes a reloadable snapshot and meta.json") {
    const fs::path dir = fresh_dir("mp_exp_gendata");
    ParsedConfig parsed = parse_config(
        "experiment = gen-data\n"
        "data.kind = torus-random\n"
        "data.seed = 11\n"
        "solver.n = 16\n");
    REQUIRE(parsed.ok());
    parsed.config.out_dir = dir.string();
    CHECK(run_experiment(parsed.config) == 0);
    CHECK(fs::exists(dir / "data.mpolar"));
    CHECK(fs::exists(dir / "meta.json"));

    nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta["pass"] == true);
    CHECK(meta["experiment"] == "gen-data");
    CHECK(meta["config"].contains("params.mu"));
    fs::remove_all(dir);
}

TEST_CASE("identical config and seed give byte-identical CSV outputs") {
    const fs::path a = fresh_dir("mp_exp_det_a");
    const fs::path b = fresh_dir("mp_exp_det_b");
    ParsedConfig parsed = parse_config("experiment = symbol-check\nseed = 5\n");
    REQUIRE(parsed.ok());

    parsed.config.out_dir = a.string();
    CHECK(run_experiment(parsed.config) == 0);
    parsed.config.out_dir = b.string();
    CHECK(run_experiment(parsed.config) == 0);

    CHECK(slurp(a / "oracle_gaps.csv") == slurp(b / "oracle_gaps.csv"));
    CHECK(slurp(a / "symbol_components.csv") == slurp(b / "symbol_components.csv"));

    // CSV columns are part of the public contract
    std::istringstream gaps(slurp(a / "oracle_gaps.csv"));
    std::string header;
    std::getline(gaps, header);
    CHECK(header == "mu,chi,gamma,kappa,xi_norm,t,gap,tol");
    std::istringstream table(slurp(a / "symbol_components.csv"));
    std::getline(table, header);
    CHECK(header == "xi_sq,t,E11,E21,E22,divFactor");
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("failing experiments still emit meta.json and exit nonzero") {
    const fs::path dir = fresh_dir("mp_exp_fail");
    ParsedConfig parsed = parse_config(
        "experiment = nonlinear-run\n"
        "data.kind = continuum-profile\n");  // invalid for this experiment
    REQUIRE(parsed.ok());
    parsed.config.out_dir = dir.string();
    CHECK(run_experiment(parsed.config) == 1);
    nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta["pass"] == false);
    REQUIRE(meta["failures"].size() == 1);
    const std::string failure = meta["failures"][0];
    CHECK(failure.find("torus-random") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("nonlinear-run experiment produces the trajectory contract") {
    const fs::path dir = fresh_dir("mp_exp_traj");
    ParsedConfig parsed = parse_config(
        "experiment = nonlinear-run\n"
        "data.kind = torus-random\n"
        "data.seed = 3\n"
        "data.amplitude = 0.5\n"
        "data.sigma = 2\n"
        "data.q = 1\n"
        "solver.n = 16\n"
        "solver.dt = 0.002\n"
        "solver.t_end = 0.1\n");
    REQUIRE(parsed.ok());
    parsed.config.out_dir = dir.string();
    CHECK(run_experiment(parsed.config) == 0);

    std::istringstream csv(slurp(dir / "trajectory.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,E_u,E_w,D_grad_u,D_grad_w,D_div_w,D_curl2w");
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 51);  // t = 0 plus 50 steps recorded every step
    CHECK(fs::exists(dir / "state_initial.mpolar"));
    CHECK(fs::exists(dir / "state_final.mpolar"));
    CHECK(fs::exists(dir / "gap_from_linear.csv"));
    fs::remove_all(dir);
}

TEST_CASE("enstrophy experiment fans out across forked sub-runs") {
    const fs::path dir = fresh_dir("mp_exp_enstrophy");
    ParsedConfig parsed = parse_config(
        "experiment = enstrophy\n"
        "params.gamma = 0.5\n"
        "quad.n_radial = 96\n"
        "quad.n_angular = 6\n"
        "times.t_min = 1\n"
        "times.t_max = 50\n"
        "times.count = 5\n");
    REQUIRE(parsed.ok());
    parsed.config.out_dir = dir.string();
    CHECK(run_experiment(parsed.config, /*jobs=*/2) == 0);

    nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta["pass"] == true);
    // both interval residual reports made it back from the children
    CHECK(meta["summary"].contains("residual_1_2"));
    CHECK(meta["summary"].contains("residual_10_20"));
    CHECK(fs::exists(dir / "enstrophy.csv"));
    fs::remove_all(dir);
}
