#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spherepd::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRejected = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Environment variable holding the default seed of `check-pd`.
inline constexpr const char* kSeedVariable = "SPHEREPD_SEED";

/// Runs one command line (without the program name). The document goes to
/// `out` (or to --out), messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spherepd::cli
