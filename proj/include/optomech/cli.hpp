#pragma once

#include <string>
#include <vector>

namespace optomech {

// Full command-line front end; args excludes the program name. Returns the
// process exit code: 0 success, 1 validation/config/usage failure, 2 when a
// requested check or oracle comparison ran and failed.
int run_cli(const std::vector<std::string>& args);

}  // namespace optomech
