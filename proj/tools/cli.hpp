#ifndef FRACVAL_TOOLS_CLI_HPP
#define FRACVAL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fracval::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and the machine-readable error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracval::cli

#endif  // FRACVAL_TOOLS_CLI_HPP
