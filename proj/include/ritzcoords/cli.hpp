#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ritzcoords::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitArgument = 2,
  kExitGenericity = 3,
  kExitNumerical = 4,
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or --output), diagnostics to `err`; `in` is read when no --input
/// file is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ritzcoords::cli
