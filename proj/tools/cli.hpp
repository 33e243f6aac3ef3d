// Command-line front end: argument parsing and the subcommands.
#ifndef PPBNB_TOOLS_CLI_HPP
#define PPBNB_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ppbnb/io.hpp"

namespace ppbnb::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kDegenerate = 3;
inline constexpr int kMaxIterations = 4;
inline constexpr int kVerifyFailed = 5;

int exit_code_for(TerminationReason reason);

// Builds a RunConfig from `solve` arguments (without the subcommand itself).
// Precedence: flags, then --config file, then PPBNB_THREADS (`env_threads`), then defaults.
// Tolerances not given anywhere fall back to the per-problem defaults.
RunConfig parse_run_config(const std::vector<std::string>& args, const char* env_threads = nullptr);

// Full dispatcher; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppbnb::cli

#endif
