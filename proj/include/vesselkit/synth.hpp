#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

/// Pixel-centre coordinates: (0,0) is the centre of the top-left pixel.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Straight vessel with a rectangular cross-section: covers pixels whose
/// centre projects onto the segment p0-p1 and lies within width/2 of it.
struct Vessel {
  Point p0;
  Point p1;
  double width = 1.0;
  double intensity = 1.0;
};

/// Filled disk: pixels within diameter/2 of the centre.
struct Blob {
  Point center;
  double diameter = 1.0;
  double intensity = 1.0;
};

/// Two perpendicular vessels (horizontal and vertical) meeting at `center`,
/// each spanning center +/- arm_length.
struct Cross {
  Point center;
  double arm_length = 1.0;
  double width = 1.0;
  double intensity = 1.0;
};

using Primitive = std::variant<Vessel, Blob, Cross>;

struct SceneSpec {
  int width = 64;
  int height = 64;
  std::vector<Primitive> primitives;
  double smoothing = 1.0;  // Gaussian sigma applied after rasterization; 0 disables
};

void validate(const SceneSpec& scene);

struct Scene {
  Raster image;
  BinaryMask mask;  // pixels covered by any primitive before smoothing
};

/// Rasterizes the primitives (overlaps take the maximum intensity) and blurs.
Scene render(const SceneSpec& scene);

/// Named scenes used by the experiment drivers: "vessel", "cross",
/// "blob-vessel".
SceneSpec preset_scene(std::string_view name);
std::vector<std::string> preset_names();

enum class NoiseKind { Gaussian, Speckle, SaltPepper };

NoiseKind parse_noise_kind(std::string_view name);
std::string noise_kind_name(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Gaussian;
  double amount = 0.0;  // sigma for Gaussian/Speckle, density for SaltPepper
  std::uint64_t seed = 0;
};

/// Gaussian: I + n; Speckle: I (1 + n), n ~ N(0, sigma^2); SaltPepper: a
/// `density` fraction of pixels set to 0 or 1 with equal probability. The
/// result is clamped to [0,1] and fully determined by the seed.
///
/// For a fixed seed the per-pixel noise draws are shared across amounts, so
/// the error grows monotonically with the amount.
Raster apply_noise(const Raster& img, const NoiseSpec& spec);

struct TargetedNoise {
  Raster image;
  double achieved_db = 0.0;
  double amount = 0.0;
};

/// Bisection on the noise amount (fixed seed) until the PSNR against `img`
/// is within 0.1 dB of `target_db`, or 60 iterations. Throws
/// std::domain_error naming the reachable range when the target lies outside it.
TargetedNoise noise_for_target_psnr(const Raster& img, NoiseKind kind, double target_db,
                                    std::uint64_t seed);

/// Multiplies by a linear ramp running from (1 - strength) to 1 along
/// `direction_deg` (counter-clockwise from +x as seen on screen).
Raster uneven_illumination(const Raster& img, double direction_deg, double strength);

}  // namespace vk
