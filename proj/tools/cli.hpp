#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace splitter::cli {

enum ExitCode : int {
  kDecided = 0,
  kInvalidInput = 2,
  kUndecided = 3,
  kInternalFailure = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitter::cli
