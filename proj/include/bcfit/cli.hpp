#pragma once

#include <iosfwd>

namespace bcfit::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kEmptyData = 3,
  kLookupFailure = 4,
};

/// Entry point for `bcfit <spreads|fit|simulate|plot> [flags]`.
/// Summaries go to `out`, diagnostics to `err`, data only to files.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bcfit::cli
