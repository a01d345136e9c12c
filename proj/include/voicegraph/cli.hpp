#pragma once

#include <string>
#include <vector>

namespace vg::cli {

// Full command-line dispatcher. Returns the process exit code:
//   0 success, 1 usage/config error, 2 data error, 3 internal error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args); // args without argv[0]

} // namespace vg::cli
