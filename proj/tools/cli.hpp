#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shapectl::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  ///< validate: an oracle comparison exceeded its threshold
    kInvalidInput = 2,
    kInfeasible = 3,   ///< solve-lambda: the requested shift is out of reach
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or to --out), JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapectl::cli
