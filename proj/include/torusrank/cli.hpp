/*
 * Command-line surface. `run_cli` is the whole tool behind a function call so
 * tests can drive the exact command path without spawning processes; the
 * binary's main() forwards to it.
 */
#ifndef TORUSRANK_CLI_HPP
#define TORUSRANK_CLI_HPP

#include <string>
#include <vector>

namespace torusrank::cli {

struct CliResult {
    int exit_code = 0;
    std::string report_json; // canonical RunReport (empty for usage errors)
    std::string text;        // human-readable rendering
    std::string error;       // diagnostic for nonzero exits
};

// Runs one command (args exclude the program name). Exit codes: 0 pass,
// 1 usage error, 2 invalid input structure, 3 verification mismatch,
// 4 budget exceeded.
CliResult run_cli(const std::vector<std::string>& args);

// argv wrapper: prints the report (or error) and returns the exit code.
int main_entry(int argc, const char* const* argv);

} // namespace torusrank::cli

#endif
