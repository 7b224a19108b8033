#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace octosep::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kImaginaryResidual = 3,
};

/// Runs the command line `args` (args[0] is the program name). JSON documents go to the
/// --out file when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default worker count: $OCTOSEP_WORKERS when set to a positive integer, else 1.
unsigned default_workers();

}  // namespace octosep::cli
