#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace malpha::app {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitBlowup = 3,
};

// Runs the command line `args` (args[0] is the program name) and returns
// the process exit code. Messages go to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace malpha::app
