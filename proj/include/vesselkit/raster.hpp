#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vk {

/// Whether the structures of interest are brighter or darker than the
/// background. Every enhancer in this library assumes Bright.
enum class Polarity { Bright, Dark };

/// A 2-D grayscale image stored row-major. Values are real intensities,
/// normally in [0,1]; every stored value is finite.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, double fill = 0.0);
  Raster(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator()(int x, int y) { return data_[index(x, y)]; }

  std::span<const double> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<double> row(int y) {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool same_shape(const Raster& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Binary image (ground truth, field-of-view, segmentation). Stored as bytes
/// holding 0 or 1.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool operator()(int x, int y) const { return data_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { data_[index(x, y)] = v ? 1 : 0; }

  bool at(std::size_t i) const { return data_[i] != 0; }
  void set(std::size_t i, bool v) { data_[i] = v ? 1 : 0; }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::size_t count() const noexcept;

  template <typename Image>
  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Border extension policy used whenever a filter reads outside the image.
struct Padding {
  enum class Mode {
    Replicate,  // nearest edge pixel
    Reflect,    // mirror about the edge pixel (edge not repeated)
    Constant,   // fixed value
    Periodic,   // wrap around
    // Morphology only: pixels outside the image never win the min/max, as if
    // padded with +inf for erosion and -inf for dilation. Cannot be
    // materialized by pad() or sample().
    Neutral,
  };

  Mode mode = Mode::Replicate;
  double value = 0.0;

  static constexpr Padding replicate() { return {Mode::Replicate, 0.0}; }
  static constexpr Padding reflect() { return {Mode::Reflect, 0.0}; }
  static constexpr Padding periodic() { return {Mode::Periodic, 0.0}; }
  static constexpr Padding neutral() { return {Mode::Neutral, 0.0}; }
  static Padding constant(double value);
};

/// Maps an out-of-range coordinate to an in-range one. Returns -1 when the
/// mode is Constant or Neutral and the coordinate lies outside [0, n).
int border_index(int i, int n, Padding::Mode mode) noexcept;

/// Value of img at (x, y), extended beyond the borders per `padding`.
double sample(const Raster& img, int x, int y, const Padding& padding);

/// Affine map onto [0,1]. A constant image maps to all zeros.
Raster normalize_minmax(const Raster& img);

Raster pad(const Raster& img, int margin, const Padding& padding);
Raster crop(const Raster& img, int x0, int y0, int width, int height);

/// 10 log10(peak^2 / MSE). Identical images yield +infinity.
double psnr(const Raster& a, const Raster& b, double peak = 1.0);
double mean_squared_error(const Raster& a, const Raster& b);

/// Row `row` of the image in column order.
std::vector<double> extract_profile(const Raster& img, int row);

/// Counter-clockwise quarter turn as seen on screen (x right, y down).
Raster rot90(const Raster& img);
BinaryMask rot90(const BinaryMask& mask);

/// 1 - v per pixel.
Raster invert(const Raster& img);

double min_value(const Raster& img);
double max_value(const Raster& img);
double mean_value(const Raster& img);

}  // namespace vk
