#pragma once

// In-process entry point of the `rootdatum` tool: args are the command line
// without the program name; output and diagnostics go to the given streams
// (or to the -o file).  Returns the process exit code.

#include <ostream>
#include <string>
#include <vector>

namespace perfrd::cli {

int run_rootdatum(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace perfrd::cli
