#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oqf::cli {

/// Default output directory for `reconstruct` when --output-dir is not given.
inline constexpr const char* kOutputDirEnv = "OQF_OUTPUT_DIR";

enum ExitCode { kOk = 0, kInvalid = 2, kNumerical = 3 };

/// Runs one command line (without the program name) and returns the exit
/// code: 0 on success, 2 for invalid input, 3 for a numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace oqf::cli
