#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avc::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;        // parse, validation or usage error
inline constexpr int kNoConvergence = 3;

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avc::cli
