#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haraforge::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,  ///< error-severity findings, or warnings with --strict
  kExitFailure = 2,   ///< usage, IO or parse failure
};

struct Options {
  bool color = false;
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Options& options = {});

}  // namespace haraforge::cli
