#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fts::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kSolver = 3, kNotConverged = 4 };

/// Runs the command line (args excludes the program name) and returns the
/// process exit code. Results go to out (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fts::cli
