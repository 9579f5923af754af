#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpa::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFormatError = 2,
  kParameterError = 3,
  kPrecisionError = 4,
  kMismatch = 5,
};

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qpa::cli
