#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsg::cli {

// Runs one command line (without the program name). Results go to `out`
// unless --out names a file; diagnostics go to `err`.
// Exit status: 0 success, 1 input error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsg::cli
