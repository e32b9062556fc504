#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degen/scenario.hpp"
#include "degen/verify.hpp"

namespace {

degen::Scenario load_scenario(const std::string& config_path,
                              const std::string& out_dir) {
    degen::Scenario s;
    if (!config_path.empty()) {
        s = degen::parse_config(config_path);
    } else {
        degen::validate_scenario(s);
    }
    if (!out_dir.empty()) s.output_dir = out_dir;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear wave construction, simulation and verification "
                 "for a conservation law with gradient-degenerate viscosity"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "Scenario config file (INI-style)");
    app.add_option("--out", out_dir, "Output directory (overrides config)");

    auto* profile = app.add_subcommand(
        "profile", "Sample the constructed waves on the grid at given times");
    std::vector<double> times;
    profile->add_option("--times", times, "Sample times")->expected(-1);

    auto* simulate = app.add_subcommand(
        "simulate", "Run the solver and emit checkpoint and diagnostics CSVs");

    auto* verify = app.add_subcommand(
        "verify", "Run the verification suite and print a pass/fail report");
    std::string suite = "all";
    verify->add_option("suite", suite, "all | analytic | solver")
        ->check(CLI::IsMember({"all", "analytic", "solver"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (profile->parsed()) {
            degen::cmd_profile(load_scenario(config_path, out_dir), times);
            return 0;
        }
        if (simulate->parsed()) {
            return degen::cmd_simulate(load_scenario(config_path, out_dir));
        }
        if (verify->parsed()) {
            const degen::VerifySuite vs = suite == "analytic"
                                              ? degen::VerifySuite::analytic
                                              : (suite == "solver" ? degen::VerifySuite::solver
                                                                   : degen::VerifySuite::all);
            const auto results = degen::run_verification(vs);
            degen::print_report(results, std::cout);
            return degen::all_passed(results) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
