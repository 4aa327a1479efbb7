#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geom {

// Exit codes are part of the scripting contract.
enum ExitCode : int {
    kExitOk = 0,
    kExitFindings = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

// Runs `geom <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace geom
