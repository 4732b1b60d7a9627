#pragma once

#include <iosfwd>
#include <string_view>

#include "csm/check.hpp"

namespace csm {

inline constexpr std::string_view kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInternalError = 2,
};

/// Entry point behind the `csm` binary. Results go to `out` (or the file
/// named by `--out`), diagnostics to `err`. `solver` backs the `check`
/// subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const SolverFn& solver = exact_solver());

}  // namespace csm
