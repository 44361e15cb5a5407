#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqfib::cli {

inline constexpr const char* kToolName = "sqfib";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidInput = 2, kBoundExceeded = 3 };

// Runs one command; args excludes the program name. JSON or CSV goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqfib::cli
