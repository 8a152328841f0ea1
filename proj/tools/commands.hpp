#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qreduce::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs the `qreduce` command line. `args` excludes the program name.
/// Data goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qreduce::cli
