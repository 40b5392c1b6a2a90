#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "vesselkit/gaussian.hpp"
#include "vesselkit/hessian.hpp"
#include "vesselkit/synth.hpp"

using namespace vk;

namespace {

HessianParams small_scales() {
  HessianParams p;
  p.scales = {1.0, 2.0, 3.0};
  return p;
}

// Vertical Gaussian ridge centred on column 20.
Raster ridge(double amplitude = 1.0, double width = 2.0) {
  Raster img(41, 41, 0.0);
  for (int y = 0; y < 41; ++y)
    for (int x = 0; x < 41; ++x) img(x, y) = amplitude * std::exp(-(x - 20.0) * (x - 20.0) / (2 * width * width));
  return img;
}

Raster scene_image(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(4.0, 28.0);
  SceneSpec spec;
  spec.width = 33;
  spec.height = 33;
  spec.primitives.push_back(Vessel{{pos(rng), 0}, {pos(rng), 32}, 3, 0.9});
  spec.primitives.push_back(Blob{{pos(rng), pos(rng)}, 7, 0.6});
  Raster img = render(spec).image;
  std::normal_distribution<double> n(0.0, 0.02);
  for (double& v : img.data()) v += n(rng);
  return img;
}

void check_unit_range(const Raster& r) {
  for (double v : r.data()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

}  // namespace

TEST_CASE("hessian field examples") {
  const HessianField flat = hessian_field(Raster(20, 20, 0.4), 2.0, 2.0);
  for (std::size_t i = 0; i < flat.xx.size(); ++i) {
    CHECK(flat.xx[i] == 0.0);
    CHECK(flat.xy[i] == 0.0);
    CHECK(flat.yy[i] == 0.0);
  }

  Raster quad(40, 40, 0.0);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) quad(x, y) = 0.5 * x * x;
  const HessianField h = hessian_field(quad, 2.0, 0.0);
  for (int y = 10; y < 30; ++y)
    for (int x = 10; x < 30; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * 40 + x;
      CHECK(std::abs(h.xx[i] - 1.0) < 1e-3);
      CHECK(std::abs(h.xy[i]) < 1e-3);
      CHECK(std::abs(h.yy[i]) < 1e-3);
    }
}

TEST_CASE("hessian field agrees with finite differences on a smooth field") {
  Raster img(48, 48, 0.0);
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 48; ++x) img(x, y) = std::sin(0.15 * x) * std::cos(0.1 * y);
  const double sigma = 2.0;
  const Raster smooth = gaussian_blur(img, sigma);
  const HessianField h = hessian_field(img, sigma, 0.0);
  double worst = 0.0;
  for (int y = 12; y < 36; ++y)
    for (int x = 12; x < 36; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * 48 + x;
      const double fxx = smooth(x + 1, y) - 2 * smooth(x, y) + smooth(x - 1, y);
      const double fyy = smooth(x, y + 1) - 2 * smooth(x, y) + smooth(x, y - 1);
      const double fxy =
          (smooth(x + 1, y + 1) - smooth(x - 1, y + 1) - smooth(x + 1, y - 1) + smooth(x - 1, y - 1)) / 4;
      worst = std::max({worst, std::abs(h.xx[i] - fxx), std::abs(h.yy[i] - fyy), std::abs(h.xy[i] - fxy)});
    }
  CHECK(worst < 1e-2);
}

TEST_CASE("2x2 eigenvalues") {
  const EigenPair d = eigenvalues_2x2(2.0, 0.0, 1.0);
  CHECK(d.small == 1.0);
  CHECK(d.large == 2.0);
  const EigenPair s = eigenvalues_2x2(0.0, 1.0, 0.0);
  CHECK(std::min(s.small, s.large) == -1.0);
  CHECK(std::max(s.small, s.large) == 1.0);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const EigenPair e = eigenvalues_2x2(a, b, c);
    CHECK(std::abs(e.small) <= std::abs(e.large));
    CHECK(std::abs(e.small + e.large - (a + c)) < 1e-10);
    CHECK(std::abs(e.small * e.large - (a * c - b * b)) < 1e-10);
    for (double l : {e.small, e.large}) CHECK(std::abs((a - l) * (c - l) - b * b) < 1e-12 * (1 + a * a + b * b + c * c));
  }

  HessianField f;
  f.width = 3;
  f.height = 1;
  f.xx = {1, -4, 0.5};
  f.xy = {0, 1, 0.25};
  f.yy = {-3, 2, 0.5};
  const EigenField ef = eigenvalues_2x2(f);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(ef.small[i]) <= std::abs(ef.large[i]));
}

TEST_CASE("constant images give zero response") {
  const Raster flat(24, 24, 0.5);
  CHECK(frangi_vesselness(flat, small_scales()) == Raster(24, 24, 0.0));
  CHECK(neuriteness(flat, small_scales()) == Raster(24, 24, 0.0));
  CHECK(jerman_vesselness(flat, small_scales()) == Raster(24, 24, 0.0));
}

TEST_CASE("frangi on ridges") {
  const auto p = small_scales();
  const Raster bright = frangi_vesselness(ridge(), p);
  for (int y = 5; y < 36; ++y) CHECK(bright(20, y) > 10.0 * bright(3, y) + 1e-6);

  // A dark ridge has the wrong sign of the large eigenvalue at its crest.
  Raster dark = ridge();
  for (double& v : dark.data()) v = 1.0 - v;
  const Raster wrong = frangi_vesselness(dark, p);
  for (int y = 5; y < 36; ++y) CHECK(wrong(20, y) == 0.0);
}

TEST_CASE("frangi support is unchanged by positive scaling") {
  const auto p = small_scales();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Raster img = scene_image(seed);
    const Raster ref = frangi_vesselness(img, p);
    for (double a : {0.25, 0.5, 2.0, 8.0}) {
      Raster scaled = img;
      for (double& v : scaled.data()) v *= a;
      const Raster r = frangi_vesselness(scaled, p);
      for (std::size_t i = 0; i < r.size(); ++i) CHECK((r.data()[i] > 0.0) == (ref.data()[i] > 0.0));
    }
  }
}

TEST_CASE("neuriteness reaches one on the brightest ridge") {
  const Raster n = neuriteness(ridge(), small_scales());
  check_unit_range(n);
  CHECK(oracle::max_abs_diff(n, Raster(41, 41, 0.0)) == 1.0);
  CHECK(n(20, 20) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(n(2, 20) == 0.0);
}

TEST_CASE("jerman volume ratio") {
  CHECK(volume_ratio(0.0, 1.0) == 0.0);
  CHECK(volume_ratio(-1.0, 1.0) == 0.0);
  CHECK(volume_ratio(0.5, 0.0) == 0.0);
  CHECK(volume_ratio(0.5, 1.0) == 1.0);
  CHECK(volume_ratio(0.9, 1.0) == 1.0);
  CHECK(volume_ratio(0.5 - 1e-9, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(volume_ratio(0.2, 1.0) < volume_ratio(0.3, 1.0));
  const double l2 = 0.3;
  const double lr = 1.0;
  CHECK(volume_ratio(l2, lr) ==
        doctest::Approx(l2 * l2 * (lr - l2) * std::pow(3.0 / (l2 + lr), 3)).epsilon(1e-14));

  HessianParams p = small_scales();
  const Raster j = jerman_vesselness(ridge(1.0, 3.0), p);
  check_unit_range(j);
  CHECK(j(20, 20) == 1.0);
}

TEST_CASE("hessian measures are quarter-turn equivariant") {
  HessianParams p;
  p.scales = {1.0, 2.0, 4.0};
  for (std::uint64_t seed : {5u, 6u}) {
    const Raster img = scene_image(seed);
    for (auto measure : {&frangi_vesselness, &neuriteness, &jerman_vesselness}) {
      const Raster r = measure(img, p);
      check_unit_range(r);
      CHECK(oracle::max_abs_diff(measure(rot90(img), p), rot90(r)) < 1e-10);
    }
  }
}

TEST_CASE("parameter validation") {
  HessianParams p;
  p.scales.clear();
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = HessianParams{};
  p.tau = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.tau = 1.0;
  CHECK_NOTHROW(validate(p));
  p.scales = {1.0, -2.0};
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}
