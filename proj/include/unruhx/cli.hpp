#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace unruhx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Runs one command line (args[0] is the program name). Everything the
// commands print goes to `out`; diagnostics and error lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Radians, or the literal "pi/4".
double parse_angle(std::string_view text);

}  // namespace unruhx::cli
