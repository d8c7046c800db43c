#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracops::cli {

enum ExitCode : int { ok = 0, usage = 1, numerical = 2, verification = 3 };

/// Runs the command line `args` (without the program name). Results go to `out` unless --out
/// names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracops::cli
