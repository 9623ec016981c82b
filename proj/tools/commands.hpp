#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latqd/errors.hpp"

namespace latqd::cli {

/// Exit status for a library error: 2 bad input, 3 residual too large,
/// 4 budget or overflow, 5 invariant violation.
int exit_code(ErrorCode code);

/// Runs one latqd invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latqd::cli
