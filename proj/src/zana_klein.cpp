#include "vesselkit/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "vesselkit/bowler_hat.hpp"
#include "vesselkit/hessian.hpp"
#include "vesselkit/morph.hpp"

namespace vk {

Raster sum_of_line_tophats(const Raster& img, int line_length, int orientations) {
  if (line_length < 3) throw std::invalid_argument("zana-klein: line length must be >= 3");
  if (orientations < 1) throw std::invalid_argument("zana-klein: need at least one orientation");
  Raster sum(img.width(), img.height(), 0.0);
  for (double angle : line_angles(orientations)) {
    const Raster th = tophat(img, make_line(line_length, angle));
    auto acc = sum.data();
    auto src = th.data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += src[i];
  }
  return sum;
}

Raster zana_klein(const Raster& img, const ZanaKleinParams& params) {
  if (!(params.log_sigma > 0.0)) throw std::invalid_argument("zana-klein: LoG sigma must be positive");
  const Raster sum = sum_of_line_tophats(img, params.line_length, params.orientations);
  const HessianField h = hessian_field(sum, params.log_sigma, 0.0);
  Raster out(img.width(), img.height(), 0.0);
  auto dst = out.data();
  // Ridges have a negative Laplacian; keep the positive part of its negation.
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::max(0.0, -(h.xx[i] + h.yy[i]));
  return normalize_minmax(out);
}

}  // namespace vk
