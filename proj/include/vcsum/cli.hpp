#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vcsum::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reports go to `out` or
/// the file named by --out; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> subcommands();

/// (library operation, subcommand that reaches it) for every operation.
const std::vector<std::pair<std::string, std::string>>& operation_coverage();

/// The argument list with flags that do not affect report content
/// (--out, --workers, --timing) removed, joined by spaces.
std::string command_echo(const std::vector<std::string>& args);

}  // namespace vcsum::cli
