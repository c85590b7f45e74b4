#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equivar::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kNegativeVerdict = 1,  // `check` found the matrix not symmetric / not normal
  kInputError = 2,       // unreadable file, bad flag, parse or dimension error
  kNumericalFailure = 3, // no convergence, not symmetric, degenerate stencil, caps
};

/// Runs the command line `args` (without the program name), writing to the
/// given streams. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equivar::cli
