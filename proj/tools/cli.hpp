#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charslope::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad arguments, syntax errors, unreadable annotation files
  kInvalid = 2,     // validation failures and inapplicable computations
  kGeometry = 3,    // unresolved geometry keys, unloadable databases
  kBoundary = 4,    // boundary warnings under --strict
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charslope::cli
