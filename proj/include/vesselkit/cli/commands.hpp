#pragma once

#include <string>
#include <vector>

namespace vk::cli {

/// Exit status: 0 when every requested artifact was written, 1 for usage or
/// input errors, 2 for internal failures.
int run_cli(int argc, const char* const* argv);

/// Same, with argv[0] included in `args`.
int run_cli(const std::vector<std::string>& args);

}  // namespace vk::cli
