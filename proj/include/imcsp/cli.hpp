#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imcsp {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitSchema = 2,
  kExitGuard = 3,
  kExitMismatch = 4,
};

/// Runs one command; args exclude the program name. JSON results go to `out`
/// (or to --output), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imcsp
