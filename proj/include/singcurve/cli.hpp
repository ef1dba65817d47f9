#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singcurve {

// Full command-line driver; returns the process exit code.
//   0 success / affirmative, 1 negative verdict, 2 bad input,
//   3 precision exhausted, 4 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singcurve
