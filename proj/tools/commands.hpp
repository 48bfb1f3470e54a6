#pragma once

#include <iosfwd>

namespace certicurve::tools {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kUnsupported = 3,
  kPipelineFailure = 4,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certicurve::tools
