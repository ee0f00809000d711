#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cyclogap {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitResource = 4,
  kExitRefuted = 5,
};

/// Runs one command. `args` excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclogap
