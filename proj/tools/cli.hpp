#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdaboot::cli {

/// Exit codes: 0 success, 1 data or runtime error, 2 usage error.
enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tdaboot::cli
