#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmrc::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { kOk = 0, kFail = 1, kInvalid = 2, kIo = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmrc::cli
