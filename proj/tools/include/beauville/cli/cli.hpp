#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace beauville::cli {

enum ExitCode : int { kVerified = 0, kCounterexample = 1, kUsage = 2, kUnknown = 3 };

/// Process environment the harness reads, injectable for tests.
struct Environment {
  std::optional<std::string> seed;  // BEAUVILLE_SEED
};

Environment process_environment();

/// Runs one command line (without the program name). The JSON report goes to
/// `out`, the human summary and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const Environment& env = {});

}  // namespace beauville::cli
