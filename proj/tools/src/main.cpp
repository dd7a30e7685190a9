#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bidomain/errors.hpp"
#include "experiment.hpp"
#include "run_commands.hpp"

namespace {

using bidomain::tools::ExperimentConfig;

using CommandFn = bool (*)(const ExperimentConfig&, std::ostream&);

struct Command {
  const char* name;
  const char* description;
  CommandFn run;
};

constexpr Command kCommands[] = {
    {"dtn", "numeric transfer eigenvalues against the separable solution",
     bidomain::tools::cmd_dtn},
    {"forcing", "source solvability and the induced interface forcing",
     bidomain::tools::cmd_forcing},
    {"equilibria", "uniform rest states and nullcline stiffness",
     bidomain::tools::cmd_equilibria},
    {"spectrum", "mode-block eigenvalues around the rest state",
     bidomain::tools::cmd_spectrum},
    {"stability", "equilibrium classification with hyperbolicity margins",
     bidomain::tools::cmd_stability},
    {"simulate", "march the interface system and verify observed rates",
     bidomain::tools::cmd_simulate},
    {"energy-check", "discrete energy balance and the a-priori envelope",
     bidomain::tools::cmd_energy_check},
    {"ode-check", "single-mode march against a Runge-Kutta reference",
     bidomain::tools::cmd_ode_check},
};

}  // namespace

// Exit codes: 0 all checks pass, 1 configuration or data rejected,
// 2 numerical failure (including blow-up), 3 a verification failed.
int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for a two-phase interface transmission model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string prefix;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    sub->add_option("-c,--config", config_path, "experiment description (INI)")->required();
    sub->add_option("--out-dir", out_dir, "directory for CSV reports (default from config)");
    sub->add_option("--prefix", prefix, "report file prefix (default: subcommand name)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const Command* chosen = nullptr;
  for (const Command& cmd : kCommands) {
    if (app.got_subcommand(cmd.name)) chosen = &cmd;
  }

  try {
    ExperimentConfig cfg = ExperimentConfig::load(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!prefix.empty()) {
      cfg.prefix = prefix;
    } else if (cfg.prefix.empty()) {
      cfg.prefix = chosen->name;
    }
    return chosen->run(cfg, std::cout) ? 0 : 3;
  } catch (const bidomain::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const bidomain::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bidomain::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bidomain::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 2;
  }
}
