#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freelink::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDistinct = 1,  // also: fuzz found a broken invariant
  kUsage = 2,     // bad flags, unreadable or malformed input
  kPrecondition = 3,
};

// Runs one subcommand. `args` excludes the program name.
//
//   validate F
//   invariant F --pair I,J [--along I|J] [--basepoints "1:o1,2:o2,..."]
//   bracket F
//   compare F G [--pair I,J] [--depth D]
//   fuzz F --steps N --seed S [--forbid-pure] [--max-size M]
//   orbit F --pair I,J [--along I|J]
//   replay F TRACE
//
// Every subcommand accepts --jobs N.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freelink::cli
