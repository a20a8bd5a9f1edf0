#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varinf {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitPartial = 3,
  kExitSelfTestFailed = 4,
};

int dispatch(int argc, char** argv);
// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varinf
