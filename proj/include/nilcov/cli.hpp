#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilcov {

inline constexpr const char* tool_version = "0.1.0";

// One CLI invocation; the result envelope goes to `out`, diagnostics to
// `err`. Exit codes: 0 success, 1 usage or input error, 2 theorem-
// inconsistent search result, 3 resource guard tripped.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nilcov
