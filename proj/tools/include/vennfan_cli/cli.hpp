#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vennfan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args exclude the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal or a/b rational. Throws ValidationError naming `flag`.
double parse_fraction(const std::string& text, const std::string& flag);

}  // namespace vennfan::cli
