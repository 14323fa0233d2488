#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace a1lab {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name; reports go to `out`
/// (unless --out is given), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a1lab
