#pragma once

#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

struct BowlerHatParams {
  int max_diameter = 15;  // expected maximum vessel width, px
  int orientations = 12;  // line angles k*180/orientations
  int diameter_step = 1;
  Padding padding = Padding::neutral();
  int threads = 1;  // 0 = hardware concurrency; results do not depend on it
};

void validate(const BowlerHatParams& params);

/// Images indexed by structuring-element diameter.
struct ScaleStack {
  std::vector<int> diameters;
  std::vector<Raster> layers;
};

/// Diameters 1, 1+step, ... up to max_diameter.
std::vector<int> stack_diameters(const BowlerHatParams& params);

/// Line angles in degrees: k*180/orientations, k = 0..orientations-1.
std::vector<double> line_angles(int orientations);

/// Opening with a disk of each diameter.
ScaleStack disk_stack(const Raster& img, const BowlerHatParams& params);

/// Per diameter, the pixel-wise maximum of openings with lines of that length
/// over all orientations.
ScaleStack line_stack(const Raster& img, const BowlerHatParams& params);

/// max_d |line_stack[d] - disk_stack[d]| before normalization.
Raster bowler_hat_response(const Raster& img, const BowlerHatParams& params);

/// The bowler-hat transform: bowler_hat_response mapped onto [0,1].
/// Vessels (bright, elongated) respond high; background and blobs low.
Raster bowler_hat(const Raster& img, const BowlerHatParams& params = {});

}  // namespace vk
