#pragma once

#include <ostream>

namespace lgof::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kDegenerate = 3, kNumeric = 4 };

// Entry point of the `lgof` tool, with the streams injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lgof::cli
