#pragma once

#include <string>
#include <vector>

namespace nullwave::cli {

enum ExitCode : int { exit_pass = 0, exit_assertion = 1, exit_config = 2, exit_runtime = 3 };

/// Parses the command line (argv[0] is the program name), runs the named
/// subcommand and returns the exit code of the contract above.
int run(int argc, const char* const* argv);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args);

}  // namespace nullwave::cli
