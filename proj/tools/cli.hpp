#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sadic::cli {

/// Runs one sadic command. `args` excludes the program name. The report goes to `out`,
/// diagnostics and usage to `err`. Returns the process exit code:
/// 0 success or positive verdict, 1 negative verdict, 2 input error, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a64(std::string_view bytes);

}  // namespace sadic::cli
