#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey0::cli {

/// Exit codes: 0 success, 1 negative verification, 2 input error or bad
/// usage, 3 undecided.
enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kUndecided = 3 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramsey0::cli
