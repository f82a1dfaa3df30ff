#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slok::cli {

enum Exit : int {
  ok = 0,
  input_error = 1,
  infeasible = 2,
  no_convergence = 3,
  violation = 4,
};

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slok::cli
