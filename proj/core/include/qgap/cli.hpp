#pragma once

#include <string>
#include <vector>

namespace qgap::cli {

/// Entry point behind the qgap binary; args exclude the program name.
/// Exit codes: 0 success, 2 usage error, 3 numerical failure.
int run(std::vector<std::string> args);

} // namespace qgap::cli
