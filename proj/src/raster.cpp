#include "vesselkit/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vk {

namespace {

void check_dimensions(int width, int height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("image dimensions must be non-negative, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Raster::Raster(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!std::isfinite(fill)) throw std::invalid_argument("raster fill value must be finite");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster::Raster(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("raster data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("raster values must be finite");
  }
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("mask data length does not match its dimensions");
  }
  for (auto& v : data_) v = v ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

Padding Padding::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant padding value must be finite");
  return {Mode::Constant, value};
}

int border_index(int i, int n, Padding::Mode mode) noexcept {
  if (i >= 0 && i < n) return i;
  switch (mode) {
    case Padding::Mode::Replicate:
      return std::clamp(i, 0, n - 1);
    case Padding::Mode::Reflect: {
      if (n == 1) return 0;
      const int period = 2 * (n - 1);
      int r = i % period;
      if (r < 0) r += period;
      return r < n ? r : period - r;
    }
    case Padding::Mode::Periodic: {
      int r = i % n;
      return r < 0 ? r + n : r;
    }
    case Padding::Mode::Constant:
    case Padding::Mode::Neutral:
      return -1;
  }
  return -1;
}

double sample(const Raster& img, int x, int y, const Padding& padding) {
  if (padding.mode == Padding::Mode::Neutral) {
    throw std::invalid_argument("sample: Neutral padding has no pixel values");
  }
  const int xi = border_index(x, img.width(), padding.mode);
  const int yi = border_index(y, img.height(), padding.mode);
  if (xi < 0 || yi < 0) return padding.value;
  return img(xi, yi);
}

Raster normalize_minmax(const Raster& img) {
  if (img.empty()) throw std::invalid_argument("normalize_minmax: empty image");
  const auto [lo_it, hi_it] = std::minmax_element(img.data().begin(), img.data().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  Raster out(img.width(), img.height(), 0.0);
  if (range <= 0.0) return out;
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = (src[i] - lo) / range;
  }
  return out;
}

Raster pad(const Raster& img, int margin, const Padding& padding) {
  if (margin < 0) throw std::invalid_argument("pad: margin must be non-negative");
  if (img.empty()) throw std::invalid_argument("pad: empty image");
  if (padding.mode == Padding::Mode::Neutral) {
    throw std::invalid_argument("pad: Neutral padding has no pixel values");
  }
  const int w = img.width() + 2 * margin;
  const int h = img.height() + 2 * margin;
  Raster out(w, h, 0.0);

  std::vector<int> col(w);
  for (int x = 0; x < w; ++x) col[x] = border_index(x - margin, img.width(), padding.mode);

  for (int y = 0; y < h; ++y) {
    const int sy = border_index(y - margin, img.height(), padding.mode);
    auto dst = out.row(y);
    if (sy < 0) {
      std::fill(dst.begin(), dst.end(), padding.value);
      continue;
    }
    auto src = img.row(sy);
    for (int x = 0; x < w; ++x) dst[x] = col[x] < 0 ? padding.value : src[col[x]];
  }
  return out;
}

Raster crop(const Raster& img, int x0, int y0, int width, int height) {
  if (x0 < 0 || y0 < 0 || width < 0 || height < 0 || x0 + width > img.width() ||
      y0 + height > img.height()) {
    throw std::out_of_range("crop: window exceeds image bounds");
  }
  Raster out(width, height, 0.0);
  for (int y = 0; y < height; ++y) {
    auto src = img.row(y0 + y).subspan(x0, width);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

double mean_squared_error(const Raster& a, const Raster& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mean_squared_error: dimension mismatch");
  if (a.empty()) throw std::invalid_argument("mean_squared_error: empty images");
  double sum = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sum += d * d;
  }
  return sum / static_cast<double>(da.size());
}

double psnr(const Raster& a, const Raster& b, double peak) {
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

std::vector<double> extract_profile(const Raster& img, int row) {
  if (row < 0 || row >= img.height()) {
    throw std::out_of_range("extract_profile: row " + std::to_string(row) +
                            " outside [0, " + std::to_string(img.height()) + ")");
  }
  auto r = img.row(row);
  return {r.begin(), r.end()};
}

Raster rot90(const Raster& img) {
  const int w = img.width();
  const int h = img.height();
  Raster out(h, w, 0.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out(y, w - 1 - x) = img(x, y);
  return out;
}

BinaryMask rot90(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(h, w, false);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.set(y, w - 1 - x, mask(x, y));
  return out;
}

Raster invert(const Raster& img) {
  Raster out = img;
  for (double& v : out.data()) v = 1.0 - v;
  return out;
}

double min_value(const Raster& img) {
  if (img.empty()) throw std::invalid_argument("min_value: empty image");
  return *std::min_element(img.data().begin(), img.data().end());
}

double max_value(const Raster& img) {
  if (img.empty()) throw std::invalid_argument("max_value: empty image");
  return *std::max_element(img.data().begin(), img.data().end());
}

double mean_value(const Raster& img) {
  if (img.empty()) throw std::invalid_argument("mean_value: empty image");
  return std::accumulate(img.data().begin(), img.data().end(), 0.0) /
         static_cast<double>(img.size());
}

}  // namespace vk
