#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace navforge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kIo = 3,
  kUnknownPrn = 4,
  kFieldOverflow = 5,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace navforge::cli
