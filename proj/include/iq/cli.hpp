#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iq {

// Command-line front end. Exit codes: 0 success, 1 usage, 2 parse error,
// 3 domain error, 4 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace iq
