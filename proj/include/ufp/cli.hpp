#pragma once

#include <ostream>
#include <span>
#include <string>

namespace ufp::cli {

enum ExitCode { kYes = 0, kNo = 1, kInvalidInput = 2, kLimitExceeded = 3 };

/// Runs one command line (without the program name).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ufp::cli
