#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdcv {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitData = 3,
    kExitNumerical = 4,
};

/// Entry point behind the `fdcv` executable. Subcommands: estimate, simulate,
/// reproduce. Never throws; errors become a message on `err` and an exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdcv
