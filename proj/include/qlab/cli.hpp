#pragma once

// Command-line front end: expand, verify, congruence, scan, paper-suite.
// Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace qlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlab
