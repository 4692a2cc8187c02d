// Experiment driver behind the CLI: executes a parsed config, writes CSV and
// summary.json into the output directory, returns the process exit code.

#pragma once

#include <string>

#include "ebk/config.hpp"

namespace ebk {

// 0 on success, 1 when task=verify finds failures.  Configuration problems
// throw ConfigError (exit 2 in the CLI); anything else escapes as an
// exception (exit 3).
int run(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace ebk
