#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kinetra/config.hpp"
#include "kinetra/scenario.hpp"

namespace {

void print_issues(const kinetra::ParseResult& result) {
  for (const auto& issue : result.issues) {
    std::cerr << (issue.is_error ? "error" : "warning");
    if (issue.line > 0) std::cerr << " (line " << issue.line << ")";
    std::cerr << ": " << issue.message << '\n';
  }
}

std::string default_out_dir(const std::string& scenario_name) {
  if (const char* root = std::getenv("KINETRA_OUT"))
    return std::string(root) + "/" + scenario_name;
  return "out/" + scenario_name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinetra - kinetic traffic-flow scenarios"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = 0;

  auto* run_cmd = app.add_subcommand("run", "run a scenario described by a config file");
  run_cmd->add_option("config", config_path, "config file (flat key = value)")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: $KINETRA_OUT/<scenario> or out/<scenario>)");
  run_cmd->add_option("--jobs", jobs, "cap the number of worker threads");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a config file");
  validate_cmd->add_option("config", validate_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) {
    const auto result = kinetra::parse_config_file(validate_path);
    print_issues(result);
    if (!result.ok()) return 1;
    std::cout << "ok: scenario " << kinetra::to_string(result.config->scenario) << '\n';
    for (const auto& d : result.config->defaults_applied)
      std::cout << "default: " << d << '\n';
    return 0;
  }

#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif

  const auto result = kinetra::parse_config_file(config_path);
  print_issues(result);
  if (!result.ok()) return 1;

  const std::string dir =
      out_dir.empty() ? default_out_dir(kinetra::to_string(result.config->scenario)) : out_dir;
  const auto outcome = kinetra::run_scenario(*result.config, dir);
  if (outcome.exit_code != 0) {
    std::cerr << "run aborted: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  std::cout << "wrote " << dir << '\n';
  return 0;
}
