#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace skewsim {

enum ExitCode : int { kPass = 0, kGateFailed = 1, kInvalidConfig = 2 };

/// Runs one subcommand. `args` excludes the program name; `env_seed` is the
/// value of SKEWSIM_SEED if set. Results go to `out` unless --output names a
/// file; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace skewsim
