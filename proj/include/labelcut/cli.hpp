#pragma once

#include <iosfwd>

namespace labelcut::cli
{
    /// Exit codes shared by every subcommand.
    inline constexpr int exit_yes = 0;
    inline constexpr int exit_no = 1;
    inline constexpr int exit_error = 2;

    /// Runs the command line; `solve` returns exit_yes / exit_no, the other
    /// subcommands return 0 on success and 1 on a failed verification.
    auto run(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int;
}
