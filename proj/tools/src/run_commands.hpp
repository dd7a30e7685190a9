#pragma once

#include <iosfwd>

#include "experiment.hpp"

namespace bidomain::tools {

// Each command reads what it needs from the config, writes its CSV report,
// prints one [ok]/[FAIL] line per enabled verification, and returns whether
// all of them passed. Configuration and data problems surface as exceptions.
bool cmd_dtn(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_forcing(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_equilibria(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_spectrum(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_stability(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_simulate(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_energy_check(const ExperimentConfig& cfg, std::ostream& out);
bool cmd_ode_check(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace bidomain::tools
