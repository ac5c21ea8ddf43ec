#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyinv::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kUsage = 2,
  kInput = 3,
  kNumerical = 4,
};

/// Runs one `polyinv <command> ...` invocation. `args` excludes the program
/// name. Paths given as `-` read from `in` or write to `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace polyinv::cli
