#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sclean::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kUnknown = 2, kVerification = 3 };

/// Runs the command line (without the program name); JSON goes to `out`,
/// diagnostics to `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sclean::cli
