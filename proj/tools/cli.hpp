#pragma once

#include <ostream>

namespace kwright::cli {

enum ExitCode : int {
    kOk = 0,
    kPrecondition = 1,
    kInput = 2,
    kNonConvergence = 3,
    kVerifyFailed = 4,
};

/// Parses argv, runs one subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kwright::cli
