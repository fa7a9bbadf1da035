#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace typexp::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kEnumerationOverflow = 3,
  kQuantizationFailure = 4,
  kIo = 5,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code. Human-readable output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace typexp::cli
