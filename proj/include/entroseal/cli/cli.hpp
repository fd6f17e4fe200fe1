#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entroseal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParameters = 2;
inline constexpr int kExitShortKey = 3;
inline constexpr int kExitMalformed = 4;
inline constexpr int kExitIo = 5;

/// Runs one command line (args excludes the program name). Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace entroseal::cli
