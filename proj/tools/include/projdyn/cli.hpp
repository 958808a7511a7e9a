#pragma once

#include <ostream>

namespace projdyn::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Parses the command line, runs one subcommand and prints its JSON document
/// to `out`. With --out, the same document and any artifacts are also written
/// below that directory. Usage text and parse diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace projdyn::cli
