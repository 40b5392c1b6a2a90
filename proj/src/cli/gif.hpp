#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace vk::cli::detail {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

/// First frame of a GIF87a/89a file, composited onto a zero canvas.
RgbImage read_gif(const std::filesystem::path& path);

}  // namespace vk::cli::detail
