#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Each one follows the plain definition with no shared code from the
// library beyond the Raster container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "vesselkit/morph.hpp"
#include "vesselkit/raster.hpp"

namespace oracle {

// Out-of-image pixels are skipped, so they never win the min/max.
inline vk::Raster erode(const vk::Raster& img, std::span<const vk::Offset> se) {
  vk::Raster out(img.width(), img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double v = std::numeric_limits<double>::infinity();
      for (const auto& o : se) {
        const int sx = x + o.dx;
        const int sy = y + o.dy;
        if (sx < 0 || sy < 0 || sx >= img.width() || sy >= img.height()) continue;
        v = std::min(v, img(sx, sy));
      }
      out(x, y) = v;
    }
  }
  return out;
}

inline vk::Raster dilate(const vk::Raster& img, std::span<const vk::Offset> se) {
  vk::Raster out(img.width(), img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double v = -std::numeric_limits<double>::infinity();
      for (const auto& o : se) {
        const int sx = x - o.dx;
        const int sy = y - o.dy;
        if (sx < 0 || sy < 0 || sx >= img.width() || sy >= img.height()) continue;
        v = std::max(v, img(sx, sy));
      }
      out(x, y) = v;
    }
  }
  return out;
}

inline vk::Raster open(const vk::Raster& img, std::span<const vk::Offset> se) {
  return dilate(erode(img, se), se);
}

inline vk::Raster close(const vk::Raster& img, std::span<const vk::Offset> se) {
  return erode(dilate(img, se), se);
}

inline vk::Raster tophat(const vk::Raster& img, std::span<const vk::Offset> se) {
  const vk::Raster o = open(img, se);
  vk::Raster out(img.width(), img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(x, y) = img(x, y) - o(x, y);
  return out;
}

// Offsets of the digital disk by enumeration of the distance predicate.
inline std::vector<vk::Offset> disk_offsets(int d) {
  std::vector<vk::Offset> out;
  const double r = d / 2.0;
  const int w = d / 2;
  for (int dy = -w; dy <= w; ++dy)
    for (int dx = -w; dx <= w; ++dx)
      if (std::sqrt(static_cast<double>(dx * dx + dy * dy)) <= r) out.push_back({dx, dy});
  std::sort(out.begin(), out.end());
  return out;
}

// Exhaustive pairwise AUC: P(score_pos > score_neg) + 0.5 P(tie).
inline double mann_whitney(std::span<const double> score, std::span<const bool> truth) {
  double wins = 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (!truth[i]) continue;
    for (std::size_t j = 0; j < score.size(); ++j) {
      if (truth[j]) continue;
      ++pairs;
      if (score[i] > score[j]) wins += 1.0;
      else if (score[i] == score[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

inline vk::Raster random_image(int w, int h, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  vk::Raster img(w, h, 0.0);
  for (double& v : img.data()) v = u(rng);
  return img;
}

// Random image quantized to 8 bits, so ties and exact comparisons occur.
inline vk::Raster random_image8(int w, int h, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, 255);
  vk::Raster img(w, h, 0.0);
  for (double& v : img.data()) v = u(rng) / 255.0;
  return img;
}

inline double max_abs_diff(const vk::Raster& a, const vk::Raster& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline bool all_le(const vk::Raster& a, const vk::Raster& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.data()[i] > b.data()[i]) return false;
  return true;
}

// Direct 2-D convolution with the outer product of two 1-D kernels, replicate
// borders: out(x,y) = sum_{i,j} ky[j] kx[i] img(x - (i-rx), y - (j-ry)).
inline vk::Raster convolve2d(const vk::Raster& img, const std::vector<double>& kx,
                             const std::vector<double>& ky) {
  const int rx = static_cast<int>(kx.size() / 2);
  const int ry = static_cast<int>(ky.size() / 2);
  auto clampi = [](int v, int n) { return std::clamp(v, 0, n - 1); };
  vk::Raster out(img.width(), img.height(), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = 0.0;
      for (int j = 0; j < static_cast<int>(ky.size()); ++j)
        for (int i = 0; i < static_cast<int>(kx.size()); ++i)
          acc += ky[j] * kx[i] *
                 img(clampi(x - (i - rx), img.width()), clampi(y - (j - ry), img.height()));
      out(x, y) = acc;
    }
  }
  return out;
}

}  // namespace oracle
