#pragma once

#include <iosfwd>

namespace solvcert {

/// Exit codes shared by the subcommands.
enum ExitCode : int {
  kExitCertified = 0,
  kExitError = 1,
  kExitUndetermined = 2,
  kExitWarnings = 3,  // ingest and batch: some rows were skipped
};

/// Entry point of the command-line tool, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solvcert
