#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
// `reproduce` ran but at least one cell is outside its tolerance.
inline constexpr int kExitMismatch = 3;

inline constexpr const char* kVersion = "0.1.0";

// Runs the command line in-process. args excludes the program name.
// Primary output goes to out (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rankq::cli
