#ifndef BESSELID_TOOLS_CLI_COMMANDS_HPP
#define BESSELID_TOOLS_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace besselid::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1; // identity failed or numerics gave up
inline constexpr int kExitUsage = 2;   // bad arguments, domain, grid or config

// Names accepted by `eval`.
const std::vector<std::string>& eval_function_names();

// Whole command line; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace besselid::cli

#endif
