#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isonet::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2, kNumericalError = 3 };

// Runs the isonet command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isonet::cli
