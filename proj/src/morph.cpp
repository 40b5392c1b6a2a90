#include "vesselkit/morph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vk {

StructuringElement::StructuringElement(Kind kind, int size, double angle,
                                       std::vector<Offset> offsets)
    : kind_(kind), size_(size), angle_(angle), offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
  for (const auto& o : offsets_) radius_ = std::max({radius_, std::abs(o.dx), std::abs(o.dy)});
}

StructuringElement StructuringElement::disk(int diameter) {
  if (diameter < 1) {
    throw std::invalid_argument("disk diameter must be >= 1, got " + std::to_string(diameter));
  }
  const int r = diameter / 2;
  const long long d2 = static_cast<long long>(diameter) * diameter;
  std::vector<Offset> offsets;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      // (dx^2 + dy^2) <= (d/2)^2, kept in integers.
      if (4LL * (dx * dx + dy * dy) <= d2) offsets.push_back({dx, dy});
    }
  }
  return {Kind::Disk, diameter, 0.0, std::move(offsets)};
}

StructuringElement StructuringElement::line(int length, double angle_deg) {
  if (length < 1) {
    throw std::invalid_argument("line length must be >= 1, got " + std::to_string(length));
  }
  if (!(angle_deg >= 0.0 && angle_deg < 180.0)) {
    throw std::invalid_argument("line angle must lie in [0,180), got " + std::to_string(angle_deg));
  }
  // Angles in [90,180) are built as the quarter-turn of angle - 90 so that the
  // element bank is exactly closed under 90-degree rotation.
  const bool turned = angle_deg >= 90.0;
  const double base = turned ? angle_deg - 90.0 : angle_deg;
  const double rad = base * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double major = std::max(c, s);
  const double step_x = c / major;
  const double step_y = s / major;

  const int half = length / 2;
  std::vector<Offset> offsets;
  offsets.reserve(2 * half + 1);
  for (int k = -half; k <= half; ++k) {
    // lround rounds half away from zero, so offset(-k) == -offset(k).
    const int xu = static_cast<int>(std::lround(k * step_x));
    const int yu = static_cast<int>(std::lround(k * step_y));
    // (xu, yu) is y-up; rotate by +90 if needed, then flip to raster y-down.
    if (turned) {
      offsets.push_back({-yu, -xu});
    } else {
      offsets.push_back({xu, -yu});
    }
  }
  return {Kind::Line, length, angle_deg, std::move(offsets)};
}

StructuringElement StructuringElement::reflected() const {
  std::vector<Offset> r;
  r.reserve(offsets_.size());
  for (const auto& o : offsets_) r.push_back({-o.dx, -o.dy});
  return {kind_, size_, angle_, std::move(r)};
}

namespace {

enum class Rank { Min, Max };

// Sweeps every offset over a padded copy of the image. Each pass is a
// streaming min/max over contiguous rows, so the loop vectorizes and the
// result is identical to the per-pixel definition.
Raster rank_filter(const Raster& img, const StructuringElement& se, const Padding& padding,
                   Rank rank) {
  if (img.empty()) throw std::invalid_argument("morphology on an empty image");
  const int r = se.radius();
  const int w = img.width();
  const int h = img.height();
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;
  const double neutral = rank == Rank::Min ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
  const double outside = padding.mode == Padding::Mode::Neutral ? neutral : padding.value;

  std::vector<double> padded(static_cast<std::size_t>(pw) * ph);
  std::vector<int> col(pw);
  for (int x = 0; x < pw; ++x) col[x] = border_index(x - r, w, padding.mode);
  for (int y = 0; y < ph; ++y) {
    const int sy = border_index(y - r, h, padding.mode);
    double* dst = padded.data() + static_cast<std::size_t>(y) * pw;
    for (int x = 0; x < pw; ++x) dst[x] = (sy < 0 || col[x] < 0) ? outside : img(col[x], sy);
  }

  std::vector<double> acc(static_cast<std::size_t>(w) * h, neutral);
  for (const Offset& o : se.offsets()) {
    const int dx = rank == Rank::Min ? o.dx : -o.dx;
    const int dy = rank == Rank::Min ? o.dy : -o.dy;
    for (int y = 0; y < h; ++y) {
      const double* in = padded.data() + static_cast<std::size_t>(y + r + dy) * pw + (r + dx);
      double* out = acc.data() + static_cast<std::size_t>(y) * w;
      if (rank == Rank::Min) {
        for (int x = 0; x < w; ++x) out[x] = in[x] < out[x] ? in[x] : out[x];
      } else {
        for (int x = 0; x < w; ++x) out[x] = in[x] > out[x] ? in[x] : out[x];
      }
    }
  }
  // The anchor is always in the element, so every output pixel is finite.
  return Raster(w, h, std::move(acc));
}

}  // namespace

Raster erode(const Raster& img, const StructuringElement& se, const Padding& padding) {
  return rank_filter(img, se, padding, Rank::Min);
}

Raster dilate(const Raster& img, const StructuringElement& se, const Padding& padding) {
  return rank_filter(img, se, padding, Rank::Max);
}

Raster open(const Raster& img, const StructuringElement& se, const Padding& padding) {
  return dilate(erode(img, se, padding), se, padding);
}

Raster close(const Raster& img, const StructuringElement& se, const Padding& padding) {
  return erode(dilate(img, se, padding), se, padding);
}

Raster tophat(const Raster& img, const StructuringElement& se, const Padding& padding) {
  Raster out = open(img, se, padding);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] - dst[i];
  return out;
}

}  // namespace vk
