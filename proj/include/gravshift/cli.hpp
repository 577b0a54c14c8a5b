#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gravshift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` includes the program name. Returns 0 on
/// success, 1 on a domain/configuration error (or a failed experiment
/// verdict), 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gravshift::cli
