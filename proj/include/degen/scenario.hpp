#pragma once

#include <string>
#include <vector>

#include "degen/solver.hpp"

namespace degen {

struct PerturbationSpec {
    enum class Kind { none, gaussian };
    Kind kind = Kind::none;
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
};

struct Scenario {
    std::string name = "standard";
    SolverConfig solver_config;
    Grid1D grid{-40.0, 110.0, 3000};
    PerturbationSpec perturbation;
    std::vector<std::string> diagnostics{"deviation_sup", "energy_G", "phi_l2",
                                         "dissipation"};
    std::string output_dir = "out";
};

// Parses an INI-style "[section] key = value" file into a validated
// Scenario. Errors name the offending key and line. Validation includes the
// boundary-margin rule: boundaries must stay >= 5 units away from the wave
// supports through t_end.
Scenario parse_config(const std::string& path);

// Inverse of parse_config up to formatting; parse(serialize(s)) == s.
std::string serialize_config(const Scenario& s);

// Equality used by the round-trip invariant.
bool scenario_equal(const Scenario& a, const Scenario& b);

// Validates wave/grid/solver invariants; throws std::invalid_argument with
// the offending key on failure. Called by parse_config; exposed for
// programmatically built scenarios.
void validate_scenario(const Scenario& s);

CompositeWave scenario_wave(const Scenario& s);
Field scenario_initial_field(const Scenario& s, const CompositeWave& c);

// Writes one profile CSV per time (header
// t,x,u_multi,u_contact,u_rarefaction,du_multi) into output_dir.
void cmd_profile(const Scenario& s, const std::vector<double>& times);

// Runs the solver; writes per-checkpoint CSVs (t,x,u,u_multi,phi), a
// diagnostics series CSV, and a MANIFEST. Returns the process exit code
// (0 on success; on solver failure partial outputs are kept and the
// MANIFEST records the failure time).
int cmd_simulate(const Scenario& s);

}  // namespace degen
