#pragma once

#include <iosfwd>

namespace lfif {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Runs one command line. Validation failures and unknown flags return 1,
// I/O failures 2.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lfif
