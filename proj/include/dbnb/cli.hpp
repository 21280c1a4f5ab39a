#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dbnb {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

/// Runs the `dbnb` command line (`args` excludes the program name). All output goes
/// to `out` and `err`; `in` feeds `predict` when no input file is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dbnb
