#pragma once

// Command-line front end. Exit codes: 0 an inverse was produced (or the
// command succeeded), 2 a mathematically negative result, 1 an operational
// failure (I/O, malformed input, bad arguments).

#include <iosfwd>

namespace ginv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNegative = 2;

/// Environment variable holding the default zero_rel tolerance.
inline constexpr const char* kTolEnv = "GINVKIT_TOL";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ginv::cli
