#pragma once

#include <string>
#include <vector>

namespace shepherd {

// Entry point shared by the binary and the tests. Exit codes: 0 success,
// 2 usage/config error, 1 internal error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace shepherd
