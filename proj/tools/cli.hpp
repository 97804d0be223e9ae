#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stablederiv::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kGuaranteeViolation = 2,
};

/// Runs the command line `args` (args[0] is the program name) and returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stablederiv::cli
