#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace squaretile::cli {

/** @brief Exit codes of the command-line tool. */
enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

/// Environment variable naming the orbit cache directory when --cache is not given.
inline constexpr const char* kCacheEnv = "SQUARETILE_CACHE";

/**
 * @brief Runs one command line (without the program name). Reports go to out,
 * diagnostics to err. Returns 0 on success, 1 when a verification finds a
 * mismatch and 2 on usage or input errors.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace squaretile::cli
