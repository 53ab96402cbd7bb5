#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tardis::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kInfeasible = 3,
    kBudget = 4,
};

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`; `in` is read when no input path (or "-") is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tardis::cli
