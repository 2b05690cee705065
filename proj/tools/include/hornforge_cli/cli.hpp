#pragma once

// `hornforge` command dispatch. Artifacts go to `out` (or --output),
// diagnostics to `err`. Exit status: 0 ok, 1 check failure, 2 input error,
// 3 resource limit.

#include <iosfwd>
#include <string>
#include <vector>

namespace hornforge::cli {

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hornforge::cli
