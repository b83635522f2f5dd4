#pragma once

#include <iosfwd>

namespace pscale {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `pscale` command line: simulate, sweep, feasibility,
/// report. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pscale
