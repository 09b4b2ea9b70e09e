#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prtrp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInstance = 2;
inline constexpr int kExitEngineLimit = 3;
inline constexpr int kExitInternal = 4;

// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prtrp::cli
