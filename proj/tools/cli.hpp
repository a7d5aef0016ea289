#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace a2dkit::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 on success, 1 on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a2dkit::cli
