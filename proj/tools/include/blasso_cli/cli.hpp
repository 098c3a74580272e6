#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blasso::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4 };

/// Runs the `blasso` command line. `args` includes the program name.
/// Normal output goes to `out`, messages and warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blasso::cli
