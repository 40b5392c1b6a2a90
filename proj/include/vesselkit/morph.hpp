#pragma once

#include <compare>
#include <span>
#include <vector>

#include "vesselkit/raster.hpp"

namespace vk {

/// Pixel offset relative to a structuring element's anchor, in raster
/// coordinates (x to the right, y downwards).
struct Offset {
  int dx = 0;
  int dy = 0;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Flat (binary) structuring element: a point-symmetric set of offsets that
/// always contains the anchor.
class StructuringElement {
 public:
  enum class Kind { Disk, Line };

  /// Offsets {(dx,dy) : dx^2 + dy^2 <= (d/2)^2}.
  static StructuringElement disk(int diameter);

  /// One-pixel-wide digital segment through the anchor. Angles are in degrees
  /// in [0,180), measured counter-clockwise from the +x axis as seen on
  /// screen. The segment has 2*floor(d/2)+1 pixels, one per step along its
  /// major axis, so its extent matches the disk of the same d.
  static StructuringElement line(int length, double angle_deg);

  Kind kind() const noexcept { return kind_; }
  int size() const noexcept { return size_; }
  double angle() const noexcept { return angle_; }
  std::span<const Offset> offsets() const noexcept { return offsets_; }

  /// Chebyshev radius: max |dx|, |dy| over the offsets.
  int radius() const noexcept { return radius_; }

  StructuringElement reflected() const;

 private:
  StructuringElement(Kind kind, int size, double angle, std::vector<Offset> offsets);

  Kind kind_;
  int size_;
  double angle_;
  int radius_ = 0;
  std::vector<Offset> offsets_;
};

inline StructuringElement make_disk(int diameter) { return StructuringElement::disk(diameter); }
inline StructuringElement make_line(int length, double angle_deg) {
  return StructuringElement::line(length, angle_deg);
}

// Flat grayscale morphology. Pixels outside the image are supplied by
// `padding`; each operator pads its own input, so open/close pad twice.
// The default Neutral border lets out-of-image pixels never win, which keeps
// opening/closing exactly idempotent and (anti-)extensive up to the border.
// Replicate and Reflect re-pad the eroded image and break those laws for
// diagonal lines near the border.

/// out(p) = min_{o in se} img(p + o)
Raster erode(const Raster& img, const StructuringElement& se,
             const Padding& padding = Padding::neutral());
/// out(p) = max_{o in se} img(p - o)
Raster dilate(const Raster& img, const StructuringElement& se,
              const Padding& padding = Padding::neutral());
Raster open(const Raster& img, const StructuringElement& se,
            const Padding& padding = Padding::neutral());
Raster close(const Raster& img, const StructuringElement& se,
             const Padding& padding = Padding::neutral());
/// img - open(img)
Raster tophat(const Raster& img, const StructuringElement& se,
              const Padding& padding = Padding::neutral());

}  // namespace vk
