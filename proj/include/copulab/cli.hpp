#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copulab::cli {

// Entry point for the copulab tool.  args excludes the program name.
// Exit codes: 0 success, 2 spec/flag validation failure (error JSON on err),
// 1 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace copulab::cli
