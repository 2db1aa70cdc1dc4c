// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interpolmc::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kUnsatOrSafe = 0,
  kSatOrUnsafe = 1,
  kUnknown = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interpolmc::cli
