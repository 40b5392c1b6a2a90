#pragma once

#include <stdexcept>

namespace vk::cli {

/// Bad user input: unreadable files, malformed configs, missing datasets.
/// Maps to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vk::cli
