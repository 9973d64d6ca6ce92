#pragma once

#include <iosfwd>

namespace cslbound {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumeric = 2 };

/// Entry point of the `cslbound` tool; writes results to `out` (or --output)
/// and a single-line `error: E_<CODE>: ...` diagnostic to `err` on failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cslbound
