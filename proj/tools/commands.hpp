#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fraisse::cli {

// A command body is a pure function of its parameters and its embedded inputs, so
// `verify` can recompute it offline. Bodies carry "exit_code"; timings are added by
// the driver and ignored when comparing.
using Compute = std::function<Json(const Json& params, const Json& inputs)>;

// Independent re-checks of the certificates a body embeds; each problem names the
// broken certificate.
using CertificateCheck = std::function<std::vector<std::string>(const Json& body)>;

struct CommandEntry {
    Compute compute;
    CertificateCheck check;  // may be empty
};

const std::map<std::string, CommandEntry>& command_table();

Json make_body(const std::string& command, const Json& params, const Json& inputs, const std::string& verdict,
               int exit_code, const std::string& bounds);

// Registration hooks, one per source file.
void register_class_commands(std::map<std::string, CommandEntry>& t);
void register_limit_commands(std::map<std::string, CommandEntry>& t);
void register_game_commands(std::map<std::string, CommandEntry>& t);
void register_katetov_commands(std::map<std::string, CommandEntry>& t);
void register_wreath_commands(std::map<std::string, CommandEntry>& t);

// Small helpers shared by the command files.
OraclePtr oracle_param(const Json& params);
FinStructure one_point(const ClassOracle& oracle);
const Json& param(const Json& params, const char* key);
int int_param(const Json& params, const char* key);
std::vector<int> iota(int n);

}  // namespace fraisse::cli
