#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace synchrokit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolations = 2;

/// Runs one command line (without the program name). Exit codes: 0 on
/// success, 1 on usage or domain errors, 2 when verify finds violations.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synchrokit::cli
