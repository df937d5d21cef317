#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geodiam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation; args excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geodiam::cli
