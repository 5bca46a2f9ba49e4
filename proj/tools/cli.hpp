#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weylscope::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kSolverError = 2,
  kInvariantFailure = 3,
};

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylscope::cli
