/// @file tools/cli.hpp
/// @brief Command-line front end, callable in-process for tests.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lorcyl::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorcyl::cli
