#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plastiflow::cli {

// Runs one command; args excludes the program name. Returns the exit code:
// 0 pass, 1 checks failed, 2 usage, IO or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plastiflow::cli
