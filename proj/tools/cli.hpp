#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphreg::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int {
  kOk = 0,
  kInvalidParameters = 2,
  kDataError = 3,
};

/// Runs the command line `args` (args[0] is the program name) writing
/// human-readable output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphreg::cli
