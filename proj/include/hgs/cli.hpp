#pragma once

#include <map>
#include <string>

namespace hgs::cli {

// flat `key = value` file, # comments, blank lines allowed; unknown keys are
// the caller's problem (run() validates against its flag set). Parse errors
// report the line number.
std::map<std::string, std::string> load_config(const std::string& path);

// exit codes: 0 success, 1 validation/usage error, 2 numerical failure
int run(int argc, const char* const* argv);

}  // namespace hgs::cli
