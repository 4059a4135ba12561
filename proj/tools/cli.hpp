#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fraisse/io.hpp"

namespace fraisse::cli {

enum ExitCode { kOk = 0, kFails = 1, kInconclusive = 2, kInputError = 3 };

// Report printed (or written with --out) by every command.
struct CommandReport {
    Json body;  // command, parameters, verdict and embedded certificates
    int exit_code = kOk;
};

// argv[0] is the program name. Reports go to `out` unless --out names a file;
// diagnostics go to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// FRAISSE_BOUND overrides the default search bound of 4.
int default_bound();

// Recomputes every certificate in a report produced by this tool.
CommandReport verify_report(const Json& report);

}  // namespace fraisse::cli
