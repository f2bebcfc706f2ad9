// Batch experiment runner for the micropolar spectral toolkit.
//
//   micropolar <experiment> --config <file> [--out-dir d] [--seed s] [--jobs k]
//
// Exit status: 0 if every built-in assertion of the experiment passed,
// 1 on assertion failure, 2 on configuration errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "micropolar/config.hpp"
#include "micropolar/experiment.hpp"
#include "micropolar/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"micropolar: spectral experiments for the 3D micropolar system"};
    app.set_version_flag("--version", std::string(micropolar::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir_override;
    std::string seed_override;
    int jobs = 1;

    for (const auto& name : micropolar::experiment_names()) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "experiment config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir_override, "override out_dir");
        sub->add_option("--seed", seed_override, "override seed");
        sub->add_option("--jobs", jobs, "max concurrent sub-run processes")
            ->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string experiment = app.get_subcommands().front()->get_name();

    std::ifstream in(config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    micropolar::ParsedConfig parsed = micropolar::parse_config(buffer.str());
    if (parsed.config.experiment.empty()) parsed.config.experiment = experiment;
    if (parsed.config.experiment != experiment) {
        std::cerr << "config file sets experiment = " << parsed.config.experiment
                  << " but the subcommand is " << experiment << "\n";
        return 2;
    }
    // drop only the missing-experiment complaint, now satisfied by the subcommand
    std::erase_if(parsed.errors, [](const micropolar::ParseError& e) {
        return e.message.find("missing required key 'experiment'") != std::string::npos;
    });
    if (!parsed.errors.empty()) {
        for (const auto& e : parsed.errors)
            std::cerr << config_path << ":" << e.line << ": " << e.message << "\n";
        return 2;
    }

    if (!out_dir_override.empty()) parsed.config.out_dir = out_dir_override;
    if (!seed_override.empty()) {
        std::uint64_t s = 0;
        if (!micropolar::config_detail::parse_u64(seed_override, s)) {
            std::cerr << "--seed expects a non-negative integer\n";
            return 2;
        }
        parsed.config.seed = s;
    }

    const int status = micropolar::run_experiment(parsed.config, jobs);
    std::cout << parsed.config.experiment << ": " << (status == 0 ? "PASS" : "FAIL")
              << " (report in " << parsed.config.out_dir << "/meta.json)\n";
    return status;
}
