#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace drg::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,  // also: enumeration differs from --expect, failed graph check
  kUsage = 2,
  kCapExceeded = 3,
};

/// Runs drgcheck with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drg::cli
