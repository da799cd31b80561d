#pragma once

#include <ostream>

namespace cbeam::cli {

enum ExitCode : int {
  kOk = 0,
  kSchema = 1,    // bad command line, model or study file
  kSingular = 2,  // singular or hopelessly ill-conditioned system
  kIo = 3,
  kValidateFailed = 4,
};

/// Entry point of the `cbeam` tool. Commands: solve, converge, validate, demo.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cbeam::cli
