#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectradef::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kHypothesisFailure = 2,
  kInternalError = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: SPECTRA_DEF_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned thread_cap();

}  // namespace spectradef::cli
