#ifndef QREFLEX_CLI_HPP
#define QREFLEX_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qreflex::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kInfeasible = 1, kMalformed = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qreflex::cli

#endif  // QREFLEX_CLI_HPP
