#include "vesselkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vesselkit/bowler_hat.hpp"
#include "vesselkit/morph.hpp"

namespace vk {

void validate(const LineDetectorParams& p) {
  if (p.orientations < 2) throw std::invalid_argument("line detector: need at least 2 orientations");
  if (p.window < 1 || p.window % 2 == 0) {
    throw std::invalid_argument("line detector: window must be a positive odd size");
  }
  if (p.lengths.empty()) throw std::invalid_argument("line detector: no line lengths given");
  for (int l : p.lengths) {
    if (l < 1 || l > p.window) {
      throw std::invalid_argument("line detector: length " + std::to_string(l) +
                                  " outside [1, window]");
    }
  }
}

namespace {

// Means are accumulated as sums of (neighbour - centre) so that a constant
// neighbourhood gives exactly zero.

Raster relative_box_mean(const Raster& img, const Raster& padded, int margin, int window) {
  const int r = window / 2;
  const int w = img.width();
  const int pw = padded.width();
  const double count = static_cast<double>(window) * window;
  Raster out(w, img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    auto centre = img.row(y);
    auto acc = out.row(y);
    for (int dy = -r; dy <= r; ++dy) {
      const double* in =
          padded.data().data() + static_cast<std::size_t>(y + margin + dy) * pw + margin;
      for (int dx = -r; dx <= r; ++dx)
        for (int x = 0; x < w; ++x) acc[x] += in[x + dx] - centre[x];
    }
    for (int x = 0; x < w; ++x) acc[x] /= count;
  }
  return out;
}

Raster relative_line_mean(const Raster& img, const Raster& padded, int margin,
                          const StructuringElement& se) {
  const int w = img.width();
  const int pw = padded.width();
  const double count = static_cast<double>(se.offsets().size());
  Raster out(w, img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    auto centre = img.row(y);
    auto acc = out.row(y);
    for (const Offset& o : se.offsets()) {
      const double* in =
          padded.data().data() + static_cast<std::size_t>(y + margin + o.dy) * pw + margin + o.dx;
      for (int x = 0; x < w; ++x) acc[x] += in[x] - centre[x];
    }
    for (int x = 0; x < w; ++x) acc[x] /= count;
  }
  return out;
}

}  // namespace

Raster box_mean(const Raster& img, int window) {
  if (window < 1 || window % 2 == 0) throw std::invalid_argument("box_mean: window must be odd");
  if (img.empty()) throw std::invalid_argument("box_mean: empty image");
  const int r = window / 2;
  Raster out = relative_box_mean(img, pad(img, r, Padding::replicate()), r, window);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

Raster line_response(const Raster& img, int length, int window, int orientations) {
  if (img.empty()) throw std::invalid_argument("line detector: empty image");
  const int margin = std::max(length / 2, window / 2);
  const Raster padded = pad(img, margin, Padding::replicate());

  const int w = img.width();
  const Raster window_rel = relative_box_mean(img, padded, margin, window);

  Raster best(w, img.height(), -std::numeric_limits<double>::max());
  for (double angle : line_angles(orientations)) {
    const Raster m = relative_line_mean(img, padded, margin, make_line(length, angle));
    auto b = best.data();
    auto v = m.data();
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::max(b[i], v[i]);
  }
  auto b = best.data();
  auto wm = window_rel.data();
  for (std::size_t i = 0; i < b.size(); ++i) b[i] -= wm[i];
  return best;
}

Raster standardize(const Raster& img) {
  Raster out(img.width(), img.height(), 0.0);
  if (min_value(img) == max_value(img)) return out;
  const double mean = mean_value(img);
  double var = 0.0;
  for (double v : img.data()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(img.size());
  const double sd = std::sqrt(var);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (src[i] - mean) / sd;
  return out;
}

Raster line_detector(const Raster& img, const LineDetectorParams& params) {
  validate(params);
  Raster combined = standardize(img);
  for (int length : params.lengths) {
    const Raster r = standardize(line_response(img, length, params.window, params.orientations));
    auto acc = combined.data();
    auto src = r.data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += src[i];
  }
  const double terms = static_cast<double>(params.lengths.size() + 1);
  for (double& v : combined.data()) v /= terms;
  return normalize_minmax(combined);
}

}  // namespace vk
