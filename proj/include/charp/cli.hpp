#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charp/errors.hpp"

namespace charp {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Exit statuses: 0 all verified, 1 a check failed, 2 inconclusive, 3 usage
/// or parse error. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

/// "N" caps pair reductions at N and terms at 20 N; "P:T" sets both caps.
std::optional<Budget> parse_budget(std::string_view text);

}  // namespace charp
