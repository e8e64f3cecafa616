#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpb {

/// Runs one CLI command. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpb
