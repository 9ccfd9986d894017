#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace samestats::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kMissingDataset = 3,
  kNumericalFailure = 4,
};

/// Runs the samestats command line. Results go to `out`, progress and
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace samestats::cli
