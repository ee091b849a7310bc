#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end: `eval`, `solve` and `verify` subcommands.
//
// Exit codes: 0 success, 1 usage or input-file error, 2 domain error,
// 3 numerical failure (quadrature, overflow, or a failing verification).

namespace hypkern::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kNumeric = 3,
};

/// Runs the CLI on `args` (without the program name), writing records to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypkern::cli
