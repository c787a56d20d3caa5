// Command-line front end. run_cli is a library function so tests can drive
// the full argument-to-output path without spawning processes; the installed
// binary is a thin wrapper around it.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace colben {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 verification or runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace colben
