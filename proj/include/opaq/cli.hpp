#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opaq {

// Runs one command line (without the program name). Exit codes: 0 analysis
// ran, 1 usage or validation error, 2 budget or depth exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opaq
