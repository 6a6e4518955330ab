#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arthur {

// Runs one command line (without argv[0]); writes the report to `out` and
// diagnostics to `err`. Exit codes: 0 success, 1 identity violation,
// 2 input error, 3 capability error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arthur
