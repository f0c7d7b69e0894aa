#pragma once

#include <iosfwd>

namespace mexneedlet::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kConfigError = 2,
    kNumericFailure = 3,
    kHypothesisViolation = 4,
};

/// Entry point shared by the executable and the tests. Tables go to --output
/// (or out), diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mexneedlet::cli
