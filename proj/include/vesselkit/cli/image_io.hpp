#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vesselkit/raster.hpp"

namespace vk::cli {

enum class PolarityMode { Bright, Dark, Auto };
enum class Channel { Green, Luma };

PolarityMode parse_polarity_mode(std::string_view name);
Channel parse_channel(std::string_view name);

/// Decodes an 8/16-bit grayscale or colour file into [0,1]. Colour input is
/// reduced to the green channel or to Rec. 601 luma. GIF is decoded in-house
/// because the DRIVE masks ship as GIF.
Raster read_intensity(const std::filesystem::path& path, Channel channel = Channel::Green);

/// Dark when (median - p10) > (p90 - median) over the FOV (all pixels if null).
Polarity detect_polarity(const Raster& img, const BinaryMask* fov = nullptr);

/// read_intensity followed by inversion when vessels are dark, so the result
/// always has bright vessels.
Raster load_image(const std::filesystem::path& path, PolarityMode polarity, Channel channel,
                  const BinaryMask* fov = nullptr);

/// Any nonzero sample is foreground.
BinaryMask load_mask(const std::filesystem::path& path);

/// 16-bit grayscale; values are clamped to [0,1] and rounded to 1/65535.
void save_image16(const Raster& img, const std::filesystem::path& path);

/// 8-bit grayscale, 0 / 255.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace vk::cli
