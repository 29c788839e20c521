#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that round-trips to the same double.
std::string format_roundtrip(double x);
/// Display format: 15 significant digits.
std::string format_display(double x);

}  // namespace lrc::cli
