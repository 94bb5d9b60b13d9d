#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lacuna {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalid = 2,
  kExitReconstruction = 3,
  kExitEvaluation = 4,
};

/// Runs the `lacuna` command line with `args` (without the program name).
/// Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lacuna
