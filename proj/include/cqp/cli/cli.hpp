#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cqp::cli {

// Parsed command line. Commands: check, run, trace, enumerate, verify.
struct CliConfig {
    std::string command;
    std::string target; // file path, builtin name, or protocol
    int dimension = 2;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> inputs; // raw --in bindings
    std::string format;                        // "", "text" or "json"
    int depth = 256;
};

// Exit codes: 0 success / verification pass, 1 verification failure,
// 2 parse or type errors (including bad flags and unreadable files).
int cli_main(int argc, const char* const* argv);

} // namespace cqp::cli
