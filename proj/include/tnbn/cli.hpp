#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tnbn {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomainError = 1,  // invalid model, bad query, inconsistent evidence
  kExitIoError = 2,      // unreadable file, parse failure, bad usage
};

/// Runs the tool with `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tnbn
