#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "vesselkit/gaussian.hpp"

using namespace vk;

namespace {

double moment(const std::vector<double>& k, int power) {
  const int r = static_cast<int>(k.size() / 2);
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(k.size()); ++i) s += k[i] * std::pow(static_cast<double>(i - r), power);
  return s;
}

}  // namespace

TEST_CASE("kernel radius and moments") {
  CHECK(gaussian_radius(1.0) == 4);
  CHECK(gaussian_radius(2.5) == 10);
  for (double sigma : {0.7, 1.0, 2.0, 3.5, 8.0}) {
    const auto g0 = gaussian_kernel(sigma, 0);
    const auto g1 = gaussian_kernel(sigma, 1);
    const auto g2 = gaussian_kernel(sigma, 2);
    CHECK(g0.size() == static_cast<std::size_t>(2 * gaussian_radius(sigma) + 1));
    CHECK(std::abs(moment(g0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(moment(g1, 0)) < 1e-12);
    CHECK(std::abs(moment(g2, 0)) < 1e-10);
    // Convolution flips the kernel, so d/dx x = -sum k[i] (i - r).
    CHECK(std::abs(-moment(g1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(moment(g2, 2) / 2.0 - 1.0) < 1e-12);
    for (std::size_t i = 0; i < g0.size(); ++i) {
      CHECK(g0[i] == doctest::Approx(g0[g0.size() - 1 - i]).epsilon(1e-14));
      CHECK(g1[i] == doctest::Approx(-g1[g1.size() - 1 - i]).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(gaussian_kernel(0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_kernel(1.0, 3), std::invalid_argument);
}

TEST_CASE("separable convolution matches a direct 2-D sum") {
  std::mt19937_64 rng(12);
  const Raster img = oracle::random_image(19, 13, rng);
  const auto kx = gaussian_kernel(1.5, 1);
  const auto ky = gaussian_kernel(1.0, 2);
  CHECK(oracle::max_abs_diff(convolve_separable(img, kx, ky), oracle::convolve2d(img, kx, ky)) < 1e-12);
  const std::vector<double> asym{0.5, 0.3, 0.2};
  const std::vector<double> id{1.0};
  CHECK(oracle::max_abs_diff(convolve_separable(img, asym, id), oracle::convolve2d(img, asym, id)) < 1e-14);
}

TEST_CASE("derivatives of polynomials are exact in the interior") {
  Raster ramp(40, 40, 0.0);
  Raster quad(40, 40, 0.0);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) {
      ramp(x, y) = 0.01 * x;
      quad(x, y) = 0.5 * 0.001 * x * x;
    }
  const auto g0 = gaussian_kernel(2.0, 0);
  const auto g1 = gaussian_kernel(2.0, 1);
  const auto g2 = gaussian_kernel(2.0, 2);
  const Raster dx = convolve_separable(ramp, g1, g0);
  const Raster dxx = convolve_separable(quad, g2, g0);
  for (int y = 10; y < 30; ++y)
    for (int x = 10; x < 30; ++x) {
      CHECK(std::abs(dx(x, y) - 0.01) < 1e-12);
      CHECK(std::abs(dxx(x, y) - 0.001) < 1e-12);
    }
}

TEST_CASE("blur preserves constants exactly") {
  const Raster flat(15, 9, 0.37);
  CHECK(gaussian_blur(flat, 2.0) == flat);
  const auto g2 = gaussian_kernel(1.0, 2);
  const auto g0 = gaussian_kernel(1.0, 0);
  CHECK(convolve_separable(flat, g2, g0) == Raster(15, 9, 0.0));
}
