#pragma once

// Command-line front end. Exit codes: 0 success, 1 malformed input or usage,
// 2 a mathematical precondition failed (the error name goes to `err`).

#include <ostream>
#include <string>
#include <vector>

namespace blockabs::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockabs::cli
