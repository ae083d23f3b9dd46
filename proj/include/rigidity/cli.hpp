#pragma once

#include <iosfwd>

namespace rigidity {

inline constexpr const char* kSchemaVersion = "1";

/// Command-line entry point. Exit codes: 0 success, 1 usage or input error,
/// 2 internal invariant violation.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rigidity
