#pragma once

#include <string>
#include <vector>

namespace ltdr::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadFlags = 2,
  kRankRejected = 3,
  kIndeterminate = 4,
  kIntegrality = 5,
};

struct Result {
  int code = kOk;
  std::string out;  // JSON report, newline-terminated
  std::string err;  // diagnostics
};

/// Runs one subcommand; `args` excludes the program name.
///
///   models        --n [--p] [--precision]
///   correspond    --n --m [--seed] | --matrix FILE    [--p] [--precision]
///   ledger        --p --h --i0 | --heights n,htH,htG,htDelta
///   formal-group  --p --h [--D] [--precision]
///
/// PADIC_PRECISION supplies the default precision (32 when unset). --pretty
/// indents the JSON.
Result run(const std::vector<std::string>& args);

}  // namespace ltdr::cli
