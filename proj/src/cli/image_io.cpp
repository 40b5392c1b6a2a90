#include "vesselkit/cli/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "gif.hpp"
#include "vesselkit/cli/error.hpp"

namespace vk::cli {

PolarityMode parse_polarity_mode(std::string_view name) {
  if (name == "bright") return PolarityMode::Bright;
  if (name == "dark") return PolarityMode::Dark;
  if (name == "auto") return PolarityMode::Auto;
  throw InputError("unknown polarity '" + std::string(name) + "' (expected bright, dark or auto)");
}

Channel parse_channel(std::string_view name) {
  if (name == "green") return Channel::Green;
  if (name == "luma") return Channel::Luma;
  throw InputError("unknown channel '" + std::string(name) + "' (expected green or luma)");
}

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

double reduce(double r, double g, double b, Channel channel) {
  return channel == Channel::Green ? g : 0.299 * r + 0.587 * g + 0.114 * b;
}

Raster from_gif(const std::filesystem::path& path, Channel channel) {
  const auto gif = detail::read_gif(path);
  Raster out(gif.width, gif.height, 0.0);
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const std::uint8_t* px = &gif.rgb[i * 3];
    dst[i] = reduce(px[0], px[1], px[2], channel) / 255.0;
  }
  return out;
}

template <typename T>
Raster from_mat(const cv::Mat& mat, Channel channel, double scale) {
  Raster out(mat.cols, mat.rows, 0.0);
  const int ch = mat.channels();
  for (int y = 0; y < mat.rows; ++y) {
    const T* row = mat.ptr<T>(y);
    auto dst = out.row(y);
    for (int x = 0; x < mat.cols; ++x) {
      const T* px = row + static_cast<std::ptrdiff_t>(x) * ch;
      // OpenCV stores colour as BGR(A).
      const double v = ch == 1 ? px[0] : reduce(px[2], px[1], px[0], channel);
      dst[x] = std::min(1.0, v / scale);
    }
  }
  return out;
}

double quantile(std::vector<double>& values, double q) {
  const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size() - 1)));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

}  // namespace

Raster read_intensity(const std::filesystem::path& path, Channel channel) {
  if (!std::filesystem::is_regular_file(path)) throw InputError("cannot read " + path.string());
  if (lower_extension(path) == ".gif") return from_gif(path, channel);

  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw InputError("cannot decode " + path.string());
  const int ch = mat.channels();
  if (ch != 1 && ch != 3 && ch != 4) {
    throw InputError(path.string() + ": unsupported channel count " + std::to_string(ch));
  }
  switch (mat.depth()) {
    case CV_8U: return from_mat<std::uint8_t>(mat, channel, 255.0);
    case CV_16U: return from_mat<std::uint16_t>(mat, channel, 65535.0);
    default: throw InputError(path.string() + ": unsupported sample depth (need 8 or 16 bit)");
  }
}

Polarity detect_polarity(const Raster& img, const BinaryMask* fov) {
  if (fov != nullptr && !fov->same_shape(img)) throw InputError("FOV mask size differs from image");
  std::vector<double> values;
  values.reserve(img.size());
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i)
    if (fov == nullptr || fov->at(i)) values.push_back(src[i]);
  if (values.empty()) return Polarity::Bright;
  const double p10 = quantile(values, 0.10);
  const double median = quantile(values, 0.50);
  const double p90 = quantile(values, 0.90);
  return median - p10 > p90 - median ? Polarity::Dark : Polarity::Bright;
}

Raster load_image(const std::filesystem::path& path, PolarityMode polarity, Channel channel,
                  const BinaryMask* fov) {
  Raster img = read_intensity(path, channel);
  bool dark = polarity == PolarityMode::Dark;
  if (polarity == PolarityMode::Auto) dark = detect_polarity(img, fov) == Polarity::Dark;
  return dark ? invert(img) : img;
}

BinaryMask load_mask(const std::filesystem::path& path) {
  const Raster img = read_intensity(path, Channel::Luma);
  BinaryMask mask(img.width(), img.height(), false);
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) mask.set(i, src[i] > 0.0);
  return mask;
}

namespace {

void write(const cv::Mat& mat, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat);
  } catch (const cv::Exception& e) {
    throw InputError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw InputError("cannot write " + path.string());
}

}  // namespace

void save_image16(const Raster& img, const std::filesystem::path& path) {
  cv::Mat mat(img.height(), img.width(), CV_16UC1);
  for (int y = 0; y < img.height(); ++y) {
    auto src = img.row(y);
    auto* dst = mat.ptr<std::uint16_t>(y);
    for (int x = 0; x < img.width(); ++x)
      dst[x] = static_cast<std::uint16_t>(std::lround(std::clamp(src[x], 0.0, 1.0) * 65535.0));
  }
  write(mat, path);
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  cv::Mat mat(mask.height(), mask.width(), CV_8UC1);
  for (int y = 0; y < mask.height(); ++y) {
    auto* dst = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mask.width(); ++x) dst[x] = mask(x, y) ? 255 : 0;
  }
  write(mat, path);
}

}  // namespace vk::cli
