#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dfinum::cli {

/// Process exit codes.
enum ExitCode : int {
    ok = 0,
    parse_error = 2,
    singular = 3,
    path_error = 4,
    budget_error = 5,
    limit_error = 6,
};

/// Runs one command; `args` excludes the program name. Reports go to `out` as
/// `key = value` lines, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfinum::cli
