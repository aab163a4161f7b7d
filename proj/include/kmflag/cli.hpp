#pragma once

#include <string>
#include <vector>

namespace kmflag::cli {

enum ExitStatus { kOk = 0, kValidation = 1, kVerification = 2, kResource = 3 };

struct Result {
  int exit_code = kOk;
  std::string output;
};

/// Runs one command line (without the program name). Errors are reported in
/// the output as JSON {"error_code", "message"}.
Result run(const std::vector<std::string>& args);

}  // namespace kmflag::cli
