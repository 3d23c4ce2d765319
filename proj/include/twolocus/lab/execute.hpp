#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twolocus/lab/config.hpp"
#include "twolocus/lab/table.hpp"

namespace twolocus::lab {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitVerifyFailed = 3,
  kExitIo = 4,
  kExitMaxSteps = 5,
};

struct RunResult {
  Table table;
  int exit_code = kExitOk;
  /// Human-readable notes for stderr (failed cells, summaries).
  std::vector<std::string> diagnostics;
};

/// Runs the configured mode.  Output rows are deterministic for a given
/// config regardless of thread count.
RunResult execute(const RunConfig& config);

/// Serializes the table in the requested format.
std::string render(const Table& table, Format format);

/// Full CLI pipeline: parse, execute, emit to --out or `out`, diagnostics
/// to `err`.  Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twolocus::lab
