#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nonholonomy::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kFalseVerdict = 1, kInputError = 2, kInternalError = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Runs one command line (args[0] is the program name). `env_seed` is the
/// value of NONHOLONOMY_SEED, if set; --seed takes precedence over it.
RunResult run(const std::vector<std::string>& args, const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace nonholonomy::cli
