#pragma once

#include <iosfwd>

namespace mfrac::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitData = 3,
  kExitDomain = 4,
};

/// The `mfrac` command line. Output files go where --output says ("-" is `out`);
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfrac::app
