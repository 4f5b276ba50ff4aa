#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bowlforge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvariantFailure = 1,
  kUsageError = 2,  // CLI usage, speed spec or expression parse errors
  kAdmissibilityFailure = 3,
  kNumericalFailure = 4,
};

/// Runs `bowlforge <args...>` (program name excluded) and returns the exit code.
/// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bowlforge::cli
