#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fatpoint::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verification = 2;

/// Runs the command line (args exclude the program name). Reads
/// FATPOINT_PRIME and FATPOINT_SEED from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fatpoint::cli
