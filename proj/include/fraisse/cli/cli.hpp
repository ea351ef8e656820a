#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraisse::cli {

/// Exit codes: 0 witness found / holds, 1 exhausted or falsified, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraisse::cli
