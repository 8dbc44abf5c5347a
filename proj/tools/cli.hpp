#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace connsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitError = 2;

inline constexpr const char* kReportSchema = "connsum.report/1";

/// Runs one command line (args excludes the program name). The report goes to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace connsum::cli
