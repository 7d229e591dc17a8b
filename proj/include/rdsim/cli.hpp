#pragma once

#include <iosfwd>

namespace rdsim {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitNumerical = 3 };

/// Entry point of the rdsim tool. Subcommands: run, verify, constants, equilibrium, fit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdsim
