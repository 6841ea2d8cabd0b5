#pragma once

#include <string>
#include <vector>

namespace cam::util {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs a program found on PATH with the given arguments, capturing both
/// output streams. Throws std::system_error if the program cannot start.
ProcessResult run_process(const std::vector<std::string>& argv);

}  // namespace cam::util
