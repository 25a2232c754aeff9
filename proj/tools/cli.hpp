#pragma once

#include <iosfwd>

namespace isoproj::cli {

enum ExitCode { Ok = 0, ValidationFailure = 1, ComputationFailure = 2 };

/// Parses argv, runs one subcommand and writes JSON (or CSV for `experiment`)
/// to `out` unless --out names a file. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isoproj::cli
