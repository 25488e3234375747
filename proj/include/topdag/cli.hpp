#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topdag::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 1,
    kIoError = 2,
    kMalformedTopDag = 3,
    kVerifyFailed = 4,
};

/// Runs one command line (args excludes the program name). Payload goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace topdag::cli
