#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steklov {

// Entry point shared by the binary and the python module.  `args` excludes
// the program name.  Exit codes: 0 success, 1 failed verification or
// numerics, 2 invalid input or usage, 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace steklov
