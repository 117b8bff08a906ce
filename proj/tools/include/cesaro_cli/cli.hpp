#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cesaro::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kValidation = 2,
    kResource = 3,
    kUsage = 64,
};

/// Runs one command line (argv[0] is the program name). Tabular results go to
/// `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cesaro::cli
