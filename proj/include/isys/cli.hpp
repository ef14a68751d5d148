#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isys {

/// `args` excludes the program name. Returns 0 on success, 1 on internal
/// error or a disagreeing check, 2 on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isys
