#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "waveaction/commands.hpp"
#include "waveaction/run_config.hpp"
#include "waveaction/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  waveaction::CommandOptions opt;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "Run configuration file")->required();
  cmd->add_option("--out", args->opt.out_dir, "Output directory (overrides config)");
  cmd->add_option("--seed", args->opt.seed, "Seed for randomized suites")
      ->each([args](const std::string&) { args->opt.has_seed = true; });
  cmd->add_option("--modes", args->opt.modes_override, "Truncation order override");
  cmd->add_option("--mu", args->opt.mu_override, "Perturbation override")
      ->each([args](const std::string&) { args->opt.has_mu = true; });
}

int dispatch(const std::string& name, const CommonArgs& args) {
  const waveaction::ParsedConfig parsed = waveaction::parse_config_file(args.config_path);
  if (!parsed.ok()) {
    std::cerr << "invalid configuration:\n";
    for (const auto& err : parsed.errors)
      std::cerr << "  " << err.field << ": " << err.message << "\n";
    return waveaction::kExitConfig;
  }
  if (name == "solve") return waveaction::cmd_solve(parsed.config, args.opt, std::cout);
  if (name == "validate") return waveaction::cmd_validate(parsed.config, args.opt, std::cout);
  if (name == "field") return waveaction::cmd_field(parsed.config, args.opt, std::cout);
  if (name == "sweep") return waveaction::cmd_sweep(parsed.config, args.opt, std::cout);
  return waveaction::kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stationary-action solver for wave-equation two-point boundary "
               "value problems"};
  app.set_version_flag("--version", waveaction::kVersion);
  app.require_subcommand(1);

  CommonArgs solve_args, validate_args, field_args, sweep_args;
  add_common(app.add_subcommand("solve", "Synthesize the initial velocity for a TPBVP"),
             &solve_args);
  add_common(app.add_subcommand("validate", "Run the invariant suites"), &validate_args);
  add_common(app.add_subcommand("field", "Export the space-time displacement field"),
             &field_args);
  add_common(app.add_subcommand("sweep", "Trotter-Kato gap table over a mu sweep"), &sweep_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : waveaction::kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "solve") return dispatch(name, solve_args);
  if (name == "validate") return dispatch(name, validate_args);
  if (name == "field") return dispatch(name, field_args);
  return dispatch(name, sweep_args);
}
