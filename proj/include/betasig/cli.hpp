#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace betasig::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

/// Dispatches one command-line invocation. `args` excludes the program
/// name. Results go to `out`, diagnostics to `err`; the return value is
/// the process exit code (0 ok, 1 usage, 2 data, 3 numerical).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// main()-shaped wrapper over std::cout / std::cerr.
int run_cli(int argc, const char* const* argv);

} // namespace betasig::io
