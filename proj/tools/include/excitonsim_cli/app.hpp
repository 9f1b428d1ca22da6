// Command-line front end. Exit codes: 0 success, 2 configuration error,
// 3 numeric or convergence failure, 4 I/O failure.

#pragma once

#include <ostream>

namespace excitonsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace excitonsim::cli
