#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kIntegrationFailure = 3;
inline constexpr int kHypothesesFail = 4;
inline constexpr int kDescentViolation = 5;
inline constexpr int kInconclusive = 6;

inline constexpr unsigned long long kDefaultSeed = 20240501ULL;

/// Runs the tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crn::cli
