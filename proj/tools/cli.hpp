#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmweyl::cli {

enum ExitCode : int {
    kSuccess = 0,
    kParseFailure = 1,
    kDataFailure = 2,
    kAcceptanceFailure = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmweyl::cli
