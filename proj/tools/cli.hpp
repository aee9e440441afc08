#ifndef CLM_TOOLS_CLI_HPP
#define CLM_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace clm::cli {

enum ExitCode { kOk = 0, kUsageOrData = 2, kDegenerate = 3 };

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clm::cli

#endif  // CLM_TOOLS_CLI_HPP
