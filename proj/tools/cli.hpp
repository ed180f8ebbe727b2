#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sae::cli {

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

//! Runs the command line `args` (without the program name), writing results
//! to `out` and diagnostics to `err`. Never throws.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace sae::cli
