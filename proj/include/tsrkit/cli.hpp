#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsrkit::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kInternalLimit = 3,
};

/// Runs the tool on `args` (args[0] is the program name). Text and keystream
/// bytes go to `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsrkit::cli
