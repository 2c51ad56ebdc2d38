#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dkcore::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kMismatch = 3,
  kNotConverged = 4,
};

/// Environment variable naming the directory for relative output paths and
/// default output files.
inline constexpr const char* kOutputDirEnv = "DKCORE_OUT_DIR";

/// Runs one command line. `args` excludes the program name; "-" as an input
/// path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dkcore::cli
