#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsside {

// Entry point shared by the rsrepair binary and the tests. `args` excludes the
// program name. Reports go to `out`, diagnostics to `err`. Returns the exit
// code: 0 success, 1 verification failure, 2 bad input, 3 budget, 4 internal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsside
