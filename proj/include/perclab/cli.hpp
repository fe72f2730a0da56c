#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perclab {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTolerance = 2;
inline constexpr int kExitStrict = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perclab
