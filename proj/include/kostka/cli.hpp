#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kostka::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kEngineError = 1,
  kBadInput = 2,
  kFitFailure = 3,
  kZeroFunction = 4,
  kVerifyMismatch = 5,
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kostka::cli
