#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNoPlan = 1,
  kUsage = 2,
  kNotComputable = 3,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsp::cli
