// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.

#ifndef WPB_CLI_HPP
#define WPB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wpb::cli {

inline constexpr int kExitHealthy = 0;
inline constexpr int kExitUnhealthy = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitInputError = 64;
inline constexpr int kExitInternalError = 70;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpb::cli

#endif  // WPB_CLI_HPP
