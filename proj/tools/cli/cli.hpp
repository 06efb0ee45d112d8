#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxstop::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;          // validation or usage error
inline constexpr int exit_not_converged = 2;    // optimize
inline constexpr int exit_disagreement = 3;     // compare --strict

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxstop::cli
