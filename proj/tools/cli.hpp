#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treerank::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,
  kExitUsage = 2,
  kExitCap = 3,
};

/// Runs one command line (args excludes the program name). Graph input
/// comes from --input or `in`; results go to --output or `out`;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treerank::cli
