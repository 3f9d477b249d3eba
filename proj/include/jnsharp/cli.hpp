#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jnsharp {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInputError = 2, kExitIncomplete = 3 };

/// Runs the command line `args` (without the program name), writing reports
/// to `out` (or the --out file) and diagnostics to `err`. Returns the exit
/// code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jnsharp
