#include "vesselkit/gaussian.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vk {

int gaussian_radius(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
  return static_cast<int>(std::ceil(4.0 * sigma));
}

std::vector<double> gaussian_kernel(double sigma, int order) {
  if (order < 0 || order > 2) {
    throw std::invalid_argument("gaussian_kernel: order must be 0, 1 or 2, got " +
                                std::to_string(order));
  }
  const int r = gaussian_radius(sigma);
  const double s2 = sigma * sigma;
  std::vector<double> g(2 * r + 1);
  for (int i = -r; i <= r; ++i) g[i + r] = std::exp(-0.5 * i * i / s2);

  std::vector<double> k(g.size());
  switch (order) {
    case 0: {
      const double sum = std::accumulate(g.begin(), g.end(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) k[i] = g[i] / sum;
      break;
    }
    case 1: {
      // g'(x) ~ -x g(x); scale so that sum_i -x_i k_i = 1.
      double m1 = 0.0;
      for (int i = -r; i <= r; ++i) {
        k[i + r] = -i * g[i + r];
        m1 -= i * k[i + r];
      }
      for (double& v : k) v /= m1;
      break;
    }
    case 2: {
      // g''(x) ~ (x^2/s^2 - 1) g(x); remove the truncation bias of the mean,
      // then scale so that sum_i (x_i^2 / 2) k_i = 1.
      for (int i = -r; i <= r; ++i) k[i + r] = (i * i / s2 - 1.0) * g[i + r];
      const double mean = std::accumulate(k.begin(), k.end(), 0.0) / static_cast<double>(k.size());
      for (double& v : k) v -= mean;
      double m2 = 0.0;
      for (int i = -r; i <= r; ++i) m2 += 0.5 * i * i * k[i + r];
      for (double& v : k) v /= m2;
      break;
    }
  }
  return k;
}

namespace {

// Accumulates k * (neighbour - centre) and adds centre * nominal_sum, where
// nominal_sum is the kernel sum snapped to an integer when it is one up to
// rounding. Constant regions therefore map to exactly 0 (derivatives) or the
// same constant (smoothing).
Raster convolve_rows(const Raster& img, std::span<const double> k, const Padding& padding) {
  const int r = static_cast<int>(k.size() / 2);
  const int w = img.width();
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  const double snapped = std::round(sum);
  const double nominal = std::abs(sum - snapped) < 1e-9 ? snapped : sum;

  Raster out(w, img.height(), 0.0);
  std::vector<double> line(w + 2 * r);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = -r; x < w + r; ++x) line[x + r] = sample(img, x, y, padding);
    auto dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      const double centre = line[x + r];
      double acc = 0.0;
      // out(x) = sum_j in(x - j) k(j), j = i - r
      for (std::size_t i = 0; i < k.size(); ++i) acc += (line[x + 2 * r - i] - centre) * k[i];
      dst[x] = acc + centre * nominal;
    }
  }
  return out;
}

Raster transpose(const Raster& img) {
  Raster out(img.height(), img.width(), 0.0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(y, x) = img(x, y);
  return out;
}

}  // namespace

Raster convolve_separable(const Raster& img, std::span<const double> kx,
                          std::span<const double> ky, const Padding& padding) {
  if (img.empty()) throw std::invalid_argument("convolve_separable: empty image");
  if (kx.size() % 2 == 0 || ky.size() % 2 == 0) {
    throw std::invalid_argument("convolve_separable: kernels must have odd length");
  }
  if (padding.mode == Padding::Mode::Neutral) {
    throw std::invalid_argument("convolve_separable: Neutral padding is morphology-only");
  }
  const Raster rows = convolve_rows(img, kx, padding);
  return transpose(convolve_rows(transpose(rows), ky, padding));
}

Raster gaussian_blur(const Raster& img, double sigma, const Padding& padding) {
  const auto k = gaussian_kernel(sigma, 0);
  return convolve_separable(img, k, k, padding);
}

}  // namespace vk
