#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixparseval {

/// Exit statuses of the command-line front end.
enum ExitStatus : int {
    kExitConverged = 0,
    kExitUsage = 1,
    kExitNonConvergence = 2,
};

/// Run the CLI on `args` (without the program name), writing the report to
/// `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixparseval
