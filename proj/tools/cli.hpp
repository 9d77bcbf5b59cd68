#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mklab::cli {

/// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
/// Verification failure, gate failure, bad arguments or a precondition
/// violated (cap exceeded, N < k, ...).
inline constexpr int kExitFailure = 1;
/// Numerical failure (interlacing, non-convergence) or I/O failure.
inline constexpr int kExitRuntime = 2;

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "key = value" lines; blank lines and lines starting with '#' or
/// ';' are skipped, surrounding quotes on values are stripped. Throws
/// IoError if the file cannot be read and std::invalid_argument on a line
/// without '='.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Entry point behind the mklab binary. Never throws; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mklab::cli
