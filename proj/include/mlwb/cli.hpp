#ifndef MLWB_CLI_HPP
#define MLWB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mlwb::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kParseError = 2;
inline constexpr int kBoundedOnly = 3;
inline constexpr int kUsage = 64;
inline constexpr int kBadInput = 65;
inline constexpr int kBudget = 70;

// Runs the workbench CLI on the given argument list (without argv[0]).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mlwb::cli

#endif
