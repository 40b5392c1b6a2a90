#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vesselkit/synth.hpp"

namespace vk::cli {

/// Plain key = value scene description, one entry per line, '#' comments:
///
///   canvas    = 65 65
///   smoothing = 1.0
///   vessel    = x0 y0 x1 y1 width intensity
///   blob      = cx cy diameter intensity
///   cross     = cx cy arm_length width intensity
///
/// vessel / blob / cross may repeat. Intensity may be omitted (defaults to 1).
SceneSpec parse_scene_config(std::string_view text);
SceneSpec load_scene_config(const std::filesystem::path& path);

/// Inverse of parse_scene_config.
std::string format_scene_config(const SceneSpec& scene);

}  // namespace vk::cli
