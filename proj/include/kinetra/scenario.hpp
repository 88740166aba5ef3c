#pragma once

#include <string>

#include "kinetra/config.hpp"

namespace kinetra {

struct ScenarioOutcome {
  int exit_code = 0;  // 0 ok, 2 runtime abort
  std::string message;
};

/// Dispatch a validated config: run the scenario and write its data CSVs,
/// manifest.txt and summary.txt under out_dir. Data files are byte-identical
/// for identical configs regardless of thread count.
ScenarioOutcome run_scenario(const ScenarioConfig& config, const std::string& out_dir);

}  // namespace kinetra
