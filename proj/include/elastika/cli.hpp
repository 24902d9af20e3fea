#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elastika {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitSelftest = 3,
};

/// Entry point of the `elastika` command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elastika
