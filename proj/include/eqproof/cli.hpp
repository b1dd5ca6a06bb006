#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqproof {

/// Runs the command-line tool. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 error, 2 proof search incomplete.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqproof
