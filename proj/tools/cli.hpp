#pragma once

#include <iosfwd>

namespace lookknave::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_input = 1,
    exit_cap_exceeded = 2,
    exit_verification_failed = 3,
};

// Runs one command line. All output goes to `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lookknave::cli
