#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conelab/config.hpp"
#include "conelab/runner.hpp"
#include "conelab/version.hpp"

namespace {

struct CommandSpec {
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out_override;
  std::string report_name;
  std::function<conelab::RunResult(const conelab::ExperimentConfig&)> run;
};

void add_command(CLI::App& app, CommandSpec& spec, const char* name,
                 const char* help,
                 conelab::RunResult (*fn)(const conelab::ExperimentConfig&)) {
  spec.app = app.add_subcommand(name, help);
  spec.app->add_option("config", spec.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  spec.app->add_option("--out", spec.out_override,
                       "output directory (overrides the config)");
  spec.report_name = std::string("report_") + name;
  spec.run = fn;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: spectral functionals on cones with a conical tip"};
  app.set_version_flag("--version", conelab::kVersion);
  app.require_subcommand(1);

  CommandSpec commands[4];
  add_command(app, commands[0], "lambda-sweep",
              "lowest eigenvalue of the curvature Schrodinger operator over a "
              "(radius, mesh-size) grid",
              conelab::run_lambda_sweep);
  add_command(app, commands[1], "mu-solve",
              "constrained entropy minimization for each listed tau",
              conelab::run_mu_solve);
  add_command(app, commands[2], "inequalities",
              "weighted-norm inequality battery on the config model",
              conelab::run_inequality_suite);
  add_command(app, commands[3], "decay-fit",
              "tip decay exponent of the entropy minimizer with a nested "
              "window study",
              conelab::run_decay_fit);

  CLI11_PARSE(app, argc, argv);

  for (CommandSpec& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      const conelab::ExperimentConfig config = conelab::load_config(cmd.config_path);
      const std::string out_dir =
          cmd.out_override.empty() ? config.output_dir : cmd.out_override;
      const conelab::RunResult result = cmd.run(config);
      const std::string path = conelab::write_report(result, out_dir, cmd.report_name);
      std::cout << path << "\n";
      return result.all_passed ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
