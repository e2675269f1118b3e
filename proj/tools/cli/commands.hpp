#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace bspace::cli {

/// Runs one command. Deterministic given the config; throws CliError and the
/// library's exceptions.
Report run(const RunConfig& config);

/// Whole driver: parse, run, emit. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bspace::cli
