#pragma once

#include <ostream>

namespace caf {

/// Exit codes of the `caf` tool.
enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Entry point of `caf compile|check|bench|run`; writes results to `out`
/// and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace caf
